// Copyright 2026 the qsdlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsd/master.hpp"

#include <cmath>

#include "qsd/fft.hpp"

namespace qsd {
namespace {

// forward DFT applied to every column, in place
void fft_cols(Eigen::MatrixXcd& m) {
    for (long j = 0; j < m.cols(); ++j) fft(m.col(j).data(), std::size_t(m.rows()));
}
void ifft_cols(Eigen::MatrixXcd& m) {
    for (long j = 0; j < m.cols(); ++j) ifft(m.col(j).data(), std::size_t(m.rows()));
}

// rho_tilde = F rho F^dag (momentum representation on both indices)
Eigen::MatrixXcd to_momentum(const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd a = rho;
    fft_cols(a);
    Eigen::MatrixXcd b = a.adjoint();
    fft_cols(b);
    return b.adjoint();
}

Eigen::MatrixXcd to_position(const Eigen::MatrixXcd& rho_tilde) {
    Eigen::MatrixXcd a = rho_tilde;
    ifft_cols(a);
    Eigen::MatrixXcd b = a.adjoint();
    ifft_cols(b);
    return b.adjoint();
}

}  // namespace

DensityMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho) {
    const Grid& g = *rho.grid;
    if (g.hbar != model.hbar) throw GridMismatch("grid hbar differs from model hbar");
    const long n = long(g.n);
    const double a = model.a, b = model.b, h = model.hbar, m = model.m;
    const double ab = a * b;
    const cplx iu(0, 1);

    Eigen::MatrixXcd rt = to_momentum(rho.mat);
    Eigen::MatrixXcd st(n, n);  // {rho, p} in momentum rep
    for (long l = 0; l < n; ++l) {
        const double pl = h * g.k[std::size_t(l)];
        for (long q = 0; q < n; ++q) {
            const double pq = h * g.k[std::size_t(q)];
            const cplx r = rt(q, l);
            st(q, l) = (pq + pl) * r;
            // kinetic commutator + momentum double commutator
            rt(q, l) = (-iu / h * (pq * pq - pl * pl) / (2.0 * m) -
                        0.5 * b * b * (pq - pl) * (pq - pl)) * r;
        }
    }
    Eigen::MatrixXcd out = to_position(rt);
    Eigen::MatrixXcd s = to_position(st);

    for (long j = 0; j < n; ++j) {
        const double xj = g.x[std::size_t(j)];
        const double vj = model.potential.V(xj);
        for (long i = 0; i < n; ++i) {
            const double xi = g.x[std::size_t(i)];
            const double dxij = xi - xj;
            out(i, j) += (-iu / h * (model.potential.V(xi) - vj) -
                          0.5 * a * a * dxij * dxij) * rho.mat(i, j) -
                         iu * ab * dxij * s(i, j);
        }
    }

    // vanishes for the standard choice c = hbar a b / 2
    const double cres = model.c - 0.5 * h * ab;
    if (cres != 0.0) {
        // [{x,p}, rho] = {x,p} rho - rho {x,p}, with {x,p} = 2 x p - i hbar
        Eigen::MatrixXcd pr = rho.mat;
        fft_cols(pr);
        for (long j = 0; j < n; ++j)
            for (long i = 0; i < n; ++i) pr(i, j) *= h * g.k[std::size_t(i)];
        ifft_cols(pr);  // p rho
        Eigen::MatrixXcd rx = rho.mat;  // rho x
        for (long j = 0; j < n; ++j) rx.col(j) *= g.x[std::size_t(j)];
        Eigen::MatrixXcd rp = rx.adjoint();
        fft_cols(rp);
        for (long j = 0; j < n; ++j)
            for (long i = 0; i < n; ++i) rp(i, j) *= h * g.k[std::size_t(i)];
        ifft_cols(rp);
        Eigen::MatrixXcd rho_x_p = rp.adjoint();  // rho x p
        Eigen::MatrixXcd anti(n, n);
        for (long j = 0; j < n; ++j)
            for (long i = 0; i < n; ++i)
                anti(i, j) = 2.0 * (g.x[std::size_t(i)] * pr(i, j) - rho_x_p(i, j));
        // the -i hbar pieces of {x,p} cancel in the commutator
        out += (-iu / h * cres) * anti;
    }

    return {rho.grid, std::move(out)};
}

double suggest_dt(const LindbladModel& model, const Grid& grid) {
    const double e_max = M_PI * M_PI * grid.hbar * grid.hbar /
                         (2.0 * model.m * grid.dx * grid.dx);
    double dt = 0.2 * grid.hbar / e_max;
    const double span = grid.x_max - grid.x_min;
    const double lam_x = 0.5 * model.a * model.a * span * span;
    if (lam_x > 0) dt = std::min(dt, 1.0 / lam_x);
    const double pspan = 2.0 * grid.p_max();
    const double lam_p = 0.5 * model.b * model.b * pspan * pspan;
    if (lam_p > 0) dt = std::min(dt, 1.0 / lam_p);
    return dt;
}

Eigen::MatrixXcd evolve_raw(const LindbladModel& model, const GridPtr& grid,
                            Eigen::MatrixXcd m, double t, double dt) {
    if (t < 0) throw NonPositiveParameter("evolution time must be >= 0");
    if (!(dt > 0)) throw NonPositiveParameter("dt must be positive");
    DensityMatrix cur{grid, std::move(m)};
    double remaining = t;
    while (remaining > 1e-15 * (t + 1.0)) {
        const double h = std::min(dt, remaining);
        DensityMatrix k1 = lindblad_rhs(model, cur);
        DensityMatrix tmp{grid, cur.mat + 0.5 * h * k1.mat};
        DensityMatrix k2 = lindblad_rhs(model, tmp);
        tmp.mat = cur.mat + 0.5 * h * k2.mat;
        DensityMatrix k3 = lindblad_rhs(model, tmp);
        tmp.mat = cur.mat + h * k3.mat;
        DensityMatrix k4 = lindblad_rhs(model, tmp);
        cur.mat += (h / 6.0) * (k1.mat + 2.0 * k2.mat + 2.0 * k3.mat + k4.mat);
        remaining -= h;
    }
    return std::move(cur.mat);
}

DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho0,
                     double t, double dt) {
    if (t < 0) throw NonPositiveParameter("evolution time must be >= 0");
    if (!(dt > 0)) throw NonPositiveParameter("dt must be positive");
    DensityMatrix rho = rho0;
    const double tr0 = trace(rho0);
    double remaining = t;
    while (remaining > 1e-15 * (t + 1.0)) {
        const double h = std::min(dt, remaining);
        rho.mat = evolve_raw(model, rho.grid, std::move(rho.mat), h, h);
        remaining -= h;

        const double tr_err = std::abs(trace(rho) - tr0);
        const double herm_err = hermiticity_defect(rho);
        if (tr_err > 1e-6 || herm_err > 1e-6)
            throw StabilityViolation("master integration unstable: |dTr| = " +
                                     std::to_string(tr_err) + ", herm defect = " +
                                     std::to_string(herm_err) +
                                     " (reduce dt below " + std::to_string(dt) + ")");
    }
    return rho;
}

}  // namespace qsd
