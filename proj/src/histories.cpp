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

#include "qsd/histories.hpp"

#include <cmath>

namespace qsd {

QuasiProjector build_projector(const PhaseSpaceCell& cell, const StationaryParams& params,
                               const GridPtr& grid) {
    const double hbar = grid->hbar;
    if (cell.area_planck(hbar) < 4.0)
        throw CellTooSmall("cell area " + std::to_string(cell.area_planck(hbar)) +
                           " (2 pi hbar units) < 4");
    const double sx = std::sqrt(params.sigma_x2);
    const double sp = std::sqrt(params.sigma_p2);
    const std::size_t nq = std::size_t(std::ceil((cell.q_hi - cell.q_lo) / (0.5 * sx)));
    const std::size_t np = std::size_t(std::ceil((cell.p_hi - cell.p_lo) / (0.5 * sp)));
    const double dq = (cell.q_hi - cell.q_lo) / double(nq);
    const double dp = (cell.p_hi - cell.p_lo) / double(np);

    const long n = long(grid->n);
    QuasiProjector P{cell, Eigen::MatrixXcd::Zero(n, n), grid->dx};
    const double w = dq * dp / (2.0 * M_PI * hbar);
    for (std::size_t iq = 0; iq < nq; ++iq) {
        const double q = cell.q_lo + (double(iq) + 0.5) * dq;
        for (std::size_t ip = 0; ip < np; ++ip) {
            const double p = cell.p_lo + (double(ip) + 0.5) * dp;
            const WaveFunction psi = coherent_state(grid, params, q, p, hbar);
            Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), n);
            P.mat.noalias() += w * (v * v.adjoint());
        }
    }
    return P;
}

std::vector<PhaseSpaceCell> tile_3x3(double dq, double dp) {
    std::vector<PhaseSpaceCell> cells;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            cells.push_back({(i - 0.5) * dq, (i + 0.5) * dq, (j - 0.5) * dp, (j + 0.5) * dp});
    return cells;
}

WaveFunction apply_kernel(const QuasiProjector& P, const WaveFunction& psi) {
    const long n = long(psi.size());
    Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), n);
    Eigen::VectorXcd out = P.mat * v * psi.grid->dx;
    WaveFunction res{psi.grid, std::vector<cplx>(out.data(), out.data() + n)};
    return res;
}

DensityMatrix sandwich(const QuasiProjector& A, const DensityMatrix& rho,
                       const QuasiProjector& B) {
    const double dx = rho.grid->dx;
    DensityMatrix out{rho.grid, Eigen::MatrixXcd()};
    out.mat.noalias() = (A.mat * rho.mat * B.mat) * (dx * dx);
    return out;
}

namespace {
// operator matrix in the orthonormal discrete basis is kernel * dx
Eigen::VectorXd operator_spectrum(const QuasiProjector& P) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P.mat * P.dx,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}
}  // namespace

double spectrum_min(const QuasiProjector& P) { return operator_spectrum(P).minCoeff(); }

double spectrum_max(const QuasiProjector& P) { return operator_spectrum(P).maxCoeff(); }

double idempotence_defect(const QuasiProjector& P) {
    const Eigen::MatrixXcd op = P.mat * P.dx;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op * op - op,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

DecoherenceFunctional decoherence_functional_2(const LindbladModel& model,
                                               const DensityMatrix& rho0,
                                               const std::vector<QuasiProjector>& cells,
                                               double t01, double t12, double dt) {
    const std::size_t nc = cells.size();
    if (rho0.grid->n > 64) throw GridTooLarge("decoherence functional limited to n <= 64");
    const std::size_t nh = nc * nc;
    DecoherenceFunctional F;
    F.n_cells = nc;
    F.d = Eigen::MatrixXcd::Zero(long(nh), long(nh));

    const DensityMatrix rho1 = evolve(model, rho0, t01, dt);
    const double dx = rho0.grid->dx;

    for (std::size_t a1 = 0; a1 < nc; ++a1) {
        for (std::size_t a1p = a1; a1p < nc; ++a1p) {
            DensityMatrix m = sandwich(cells[a1], rho1, cells[a1p]);
            Eigen::MatrixXcd e = (t12 > 0)
                ? evolve_raw(model, m.grid, std::move(m.mat), t12, dt)
                : std::move(m.mat);
            for (std::size_t a2 = 0; a2 < nc; ++a2) {
                for (std::size_t a2p = 0; a2p < nc; ++a2p) {
                    const cplx val = (cells[a2].mat * e * cells[a2p].mat).trace() *
                                     dx * dx * dx;
                    F.d(long(a1 * nc + a2), long(a1p * nc + a2p)) = val;
                    if (a1p != a1)
                        F.d(long(a1p * nc + a2p), long(a1 * nc + a2)) = std::conj(val);
                }
            }
        }
    }

    double diag_sum = 0, diag_max = 0;
    for (std::size_t h = 0; h < nh; ++h) {
        const double p = F.d(long(h), long(h)).real();
        diag_sum += p;
        diag_max = std::max(diag_max, p);
    }
    F.completeness_defect = std::abs(1.0 - diag_sum);

    const double floor = 1e-3 * diag_sum / double(nh);
    for (std::size_t h = 0; h < nh; ++h) {
        const double ph = F.d(long(h), long(h)).real();
        for (std::size_t g = h + 1; g < nh; ++g) {
            const double pg = F.d(long(g), long(g)).real();
            if (ph < floor || pg < floor) {
                ++F.skipped_pairs;
                continue;
            }
            const double eps = std::abs(F.d(long(h), long(g))) / std::sqrt(ph * pg);
            F.epsilon = std::max(F.epsilon, eps);
        }
    }
    return F;
}

std::vector<double> DecoherenceFunctional::probabilities() const {
    std::vector<double> p(n_cells * n_cells);
    for (std::size_t h = 0; h < p.size(); ++h) p[h] = d(long(h), long(h)).real();
    return p;
}

void classical_orbit(const LindbladModel& model, double& q, double& p, double t, double dt) {
    const double g2 = model.friction();
    auto f = [&](double qq, double pp, double& dq, double& dp) {
        dq = pp / model.m;
        dp = -model.potential.dV(qq) - g2 * pp;
    };
    double remaining = t;
    while (remaining > 1e-15 * (t + 1)) {
        const double h = std::min(dt, remaining);
        double k1q, k1p, k2q, k2p, k3q, k3p, k4q, k4p;
        f(q, p, k1q, k1p);
        f(q + 0.5 * h * k1q, p + 0.5 * h * k1p, k2q, k2p);
        f(q + 0.5 * h * k2q, p + 0.5 * h * k2p, k3q, k3p);
        f(q + h * k3q, p + h * k3p, k4q, k4p);
        q += h / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q);
        p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
        remaining -= h;
    }
}

HistoryComparison history_probabilities_vs_fp(
    const LindbladModel& model, const std::vector<InitialMixtureComponent>& mixture,
    const StationaryParams& params, const GridPtr& grid,
    const std::vector<PhaseSpaceCell>& cells, double t01, double t12, double dt_master,
    const PhaseSpaceField& fp_proto, double dt_fp) {
    const std::size_t nc = cells.size();

    // functional side
    DensityMatrix rho0 = DensityMatrix::zero(grid);
    for (const auto& c : mixture) {
        const WaveFunction psi = coherent_state(grid, params, c.q, c.p, grid->hbar);
        Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), long(grid->n));
        rho0.mat.noalias() += c.weight * (v * v.adjoint());
    }
    std::vector<QuasiProjector> projs;
    projs.reserve(nc);
    for (const auto& c : cells) projs.push_back(build_projector(c, params, grid));
    DecoherenceFunctional F = decoherence_functional_2(model, rho0, projs, t01, t12, dt_master);

    HistoryComparison cmp;
    cmp.p_functional = F.probabilities();
    cmp.epsilon = F.epsilon;
    cmp.completeness_defect = F.completeness_defect;

    // Fokker-Planck side: impulse mixture, propagate, restrict, propagate
    const FPCoefficients co = coefficients(model, params);
    PhaseSpaceField f0 = fp_proto;
    std::fill(f0.values.begin(), f0.values.end(), 0.0);
    for (const auto& c : mixture) {
        const long iq = std::lround((c.q - f0.q0) / f0.dq);
        const long ip = std::lround((c.p - f0.p0) / f0.dp);
        f0.at(std::size_t(iq), std::size_t(ip)) += c.weight / (f0.dq * f0.dp);
    }
    PhaseSpaceField f1 = evolve_fp(co, model, f0, t01, dt_fp);

    auto cell_mass = [&](const PhaseSpaceField& f, const PhaseSpaceCell& c) {
        double s = 0;
        for (std::size_t iq = 0; iq < f.nq; ++iq)
            for (std::size_t ip = 0; ip < f.np; ++ip)
                if (c.contains(f.q_center(iq), f.p_center(ip))) s += f.at(iq, ip);
        return s * f.dq * f.dp;
    };

    cmp.p_fp.assign(nc * nc, 0.0);
    for (std::size_t a1 = 0; a1 < nc; ++a1) {
        PhaseSpaceField fr = f1;
        for (std::size_t iq = 0; iq < fr.nq; ++iq)
            for (std::size_t ip = 0; ip < fr.np; ++ip)
                if (!cells[a1].contains(fr.q_center(iq), fr.p_center(ip)))
                    fr.at(iq, ip) = 0.0;
        if (fr.mass() <= 0) continue;
        PhaseSpaceField f2 = evolve_fp(co, model, fr, t12, dt_fp);
        for (std::size_t a2 = 0; a2 < nc; ++a2)
            cmp.p_fp[a1 * nc + a2] = cell_mass(f2, cells[a2]);
    }

    for (std::size_t h = 0; h < nc * nc; ++h)
        cmp.max_abs_diff = std::max(cmp.max_abs_diff,
                                    std::abs(cmp.p_functional[h] - cmp.p_fp[h]));

    // modal history and its classical ordering
    cmp.modal_history = 0;
    for (std::size_t h = 1; h < cmp.p_functional.size(); ++h)
        if (cmp.p_functional[h] > cmp.p_functional[cmp.modal_history]) cmp.modal_history = h;
    const std::size_t a1 = cmp.modal_history / nc, a2 = cmp.modal_history % nc;
    double q = cells[a1].q_center(), p = cells[a1].p_center();
    classical_orbit(model, q, p, t12, std::min(dt_fp, 1e-2));
    cmp.modal_classical = cells[a2].contains(q, p);
    return cmp;
}

}  // namespace qsd
