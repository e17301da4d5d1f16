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

#include "qsd/hilbert.hpp"

#include <cmath>

#include "qsd/fft.hpp"

namespace qsd {

WaveFunction zero_like(const WaveFunction& psi) {
    return {psi.grid, std::vector<cplx>(psi.size(), cplx(0, 0))};
}

double norm2(const WaveFunction& psi) {
    double s = 0;
    for (const cplx& c : psi.amp) s += std::norm(c);
    return s * psi.grid->dx;
}

WaveFunction normalize(const WaveFunction& psi) {
    const double n2 = norm2(psi);
    if (n2 <= 0) throw NormCollapse("cannot normalize a zero state");
    WaveFunction out = psi;
    const double s = 1.0 / std::sqrt(n2);
    for (cplx& c : out.amp) c *= s;
    return out;
}

cplx inner(const WaveFunction& a, const WaveFunction& b) {
    require_same_grid(*a.grid, *b.grid);
    cplx s(0, 0);
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a.amp[j]) * b.amp[j];
    return s * a.grid->dx;
}

double edge_mass(const WaveFunction& psi) {
    const std::size_t n = psi.size();
    double s = std::norm(psi.amp[0]) + std::norm(psi.amp[1]) +
               std::norm(psi.amp[n - 2]) + std::norm(psi.amp[n - 1]);
    return s * psi.grid->dx;
}

WaveFunction apply_x(const WaveFunction& psi) {
    WaveFunction out = psi;
    for (std::size_t j = 0; j < psi.size(); ++j) out.amp[j] *= psi.grid->x[j];
    return out;
}

WaveFunction apply_p(const WaveFunction& psi) {
    if (edge_mass(psi) > 1e-6 * norm2(psi))
        warnings::raise(warnings::Kind::wrap,
                        "state touches the grid edge; spectral derivative may alias");
    WaveFunction out = psi;
    fft(out.amp.data(), out.size());
    const double hbar = psi.grid->hbar;
    for (std::size_t j = 0; j < out.size(); ++j) out.amp[j] *= hbar * psi.grid->k[j];
    ifft(out.amp.data(), out.size());
    return out;
}

WaveFunction apply_p2(const WaveFunction& psi) {
    WaveFunction out = psi;
    fft(out.amp.data(), out.size());
    const double hbar = psi.grid->hbar;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double pk = hbar * psi.grid->k[j];
        out.amp[j] *= pk * pk;
    }
    ifft(out.amp.data(), out.size());
    return out;
}

WaveFunction apply_sym_xp(const WaveFunction& psi) {
    WaveFunction pp = apply_p(psi);
    WaveFunction out = psi;
    const cplx ih(0, psi.grid->hbar);
    for (std::size_t j = 0; j < psi.size(); ++j)
        out.amp[j] = 2.0 * psi.grid->x[j] * pp.amp[j] - ih * psi.amp[j];
    return out;
}

namespace {

WaveFunction apply_obs(const WaveFunction& psi, Obs op, const Potential* pot) {
    switch (op) {
        case Obs::x: return apply_x(psi);
        case Obs::p: return apply_p(psi);
        case Obs::x2: {
            WaveFunction out = psi;
            for (std::size_t j = 0; j < psi.size(); ++j) {
                const double x = psi.grid->x[j];
                out.amp[j] *= x * x;
            }
            return out;
        }
        case Obs::p2: return apply_p2(psi);
        case Obs::sym_xp: return apply_sym_xp(psi);
        case Obs::V:
        case Obs::Vp:
        case Obs::xVp:
        case Obs::pVp_sym: {
            if (!pot) throw UnknownTag("potential-dependent observable needs a potential");
            if (op == Obs::pVp_sym) {
                // 1/2 (p V' + V' p) psi
                WaveFunction vp = psi;
                for (std::size_t j = 0; j < psi.size(); ++j)
                    vp.amp[j] *= pot->dV(psi.grid->x[j]);
                WaveFunction p_vp = apply_p(vp);
                WaveFunction pp = apply_p(psi);
                WaveFunction out = psi;
                for (std::size_t j = 0; j < psi.size(); ++j)
                    out.amp[j] = 0.5 * (p_vp.amp[j] + pot->dV(psi.grid->x[j]) * pp.amp[j]);
                return out;
            }
            WaveFunction out = psi;
            for (std::size_t j = 0; j < psi.size(); ++j) {
                const double x = psi.grid->x[j];
                double f = 0;
                if (op == Obs::V) f = pot->V(x);
                else if (op == Obs::Vp) f = pot->dV(x);
                else f = x * pot->dV(x);
                out.amp[j] *= f;
            }
            return out;
        }
    }
    throw UnknownTag("unknown observable tag");
}

}  // namespace

cplx expectation(const WaveFunction& psi, Obs op) {
    return inner(psi, apply_obs(psi, op, nullptr));
}

cplx expectation(const WaveFunction& psi, Obs op, const Potential& pot) {
    return inner(psi, apply_obs(psi, op, &pot));
}

OperatorCorrelation correlation(const WaveFunction& psi, Obs B, Obs C) {
    return correlation(psi, B, C, Potential::free_particle());
}

OperatorCorrelation correlation(const WaveFunction& psi, Obs B, Obs C,
                                const Potential& pot) {
    WaveFunction bpsi = apply_obs(psi, B, &pot);
    WaveFunction cpsi = apply_obs(psi, C, &pot);
    // all tag operators are hermitian, so <B^dag C> = <B psi | C psi>
    const cplx bc = inner(bpsi, cpsi);
    const cplx eb = inner(psi, bpsi);
    const cplx ec = inner(psi, cpsi);
    return {bc - std::conj(eb) * ec};
}

MomentState moments(const WaveFunction& psi) {
    const Grid& g = *psi.grid;
    const std::size_t n = psi.size();
    double xm = 0, x2m = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(psi.amp[j]);
        xm += w * g.x[j];
        x2m += w * g.x[j] * g.x[j];
    }
    xm *= g.dx;
    x2m *= g.dx;

    WaveFunction pp = psi;
    fft(pp.amp.data(), n);
    double pm = 0, p2m = 0;
    {
        // Parseval: spectrum weight |psi_hat|^2 dx / n per bin
        const double w0 = g.dx / double(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double pk = g.hbar * g.k[j];
            const double w = std::norm(pp.amp[j]) * w0;
            pm += w * pk;
            p2m += w * pk * pk;
        }
        for (std::size_t j = 0; j < n; ++j) pp.amp[j] *= g.hbar * g.k[j];
        ifft(pp.amp.data(), n);
    }
    // sigma(x,p) = <x p> - <x><p>; R = Re sigma(x,p)
    cplx xp(0, 0);
    for (std::size_t j = 0; j < n; ++j)
        xp += std::conj(psi.amp[j]) * g.x[j] * pp.amp[j];
    xp *= g.dx;

    MomentState m;
    m.x_mean = xm;
    m.p_mean = pm;
    m.var_x = x2m - xm * xm;
    m.var_p = p2m - pm * pm;
    m.r = xp.real() - xm * pm;
    return m;
}

WaveFunction gaussian_packet(const GridPtr& grid, cplx beta, double q, double p) {
    if (!(beta.real() > 0)) throw NonPositiveParameter("gaussian packet needs Re(beta) > 0");
    const double sigma_x = std::sqrt(1.0 / (4.0 * beta.real()));
    if (q - 5 * sigma_x < grid->x_min || q + 5 * sigma_x > grid->x_max)
        warnings::raise(warnings::Kind::wrap, "packet centre closer than 5 sigma to grid edge");
    std::vector<cplx> amp(grid->n);
    const cplx i_over_h(0, 1.0 / grid->hbar);
    for (std::size_t j = 0; j < grid->n; ++j) {
        const double dxj = grid->x[j] - q;
        amp[j] = std::exp(-beta * dxj * dxj + i_over_h * (p * grid->x[j]));
    }
    return normalize({grid, std::move(amp)});
}

}  // namespace qsd
