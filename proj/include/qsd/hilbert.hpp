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

#pragma once

#include <vector>

#include "qsd/grid.hpp"
#include "qsd/potential.hpp"

namespace qsd {

// Pure state on the grid, psi(x_j); normalized means sum |psi_j|^2 dx = 1.
struct WaveFunction {
    GridPtr grid;
    std::vector<cplx> amp;

    WaveFunction() = default;
    WaveFunction(GridPtr g, std::vector<cplx> a) : grid(std::move(g)), amp(std::move(a)) {}
    std::size_t size() const { return amp.size(); }
};

// (<x>, <p>, (Dx)^2, (Dp)^2, R) — the five quantities the moment equations govern.
struct MomentState {
    double x_mean = 0;
    double p_mean = 0;
    double var_x = 0;
    double var_p = 0;
    double r = 0;
};

enum class Obs { x, p, x2, p2, sym_xp, V, Vp, xVp, pVp_sym };

// sigma(B,C) = <B^dag C> - <B>* <C>
struct OperatorCorrelation {
    cplx value;
};

WaveFunction zero_like(const WaveFunction& psi);

double norm2(const WaveFunction& psi);         // sum |psi|^2 dx
WaveFunction normalize(const WaveFunction& psi);
cplx inner(const WaveFunction& a, const WaveFunction& b);  // <a|b>, dx weight

WaveFunction apply_x(const WaveFunction& psi);
// (hbar/i) d/dx, spectral. Raises a wrap warning when more than 1e-6 of the
// norm sits in the outermost two cells on either side.
WaveFunction apply_p(const WaveFunction& psi);
WaveFunction apply_p2(const WaveFunction& psi);
// full anticommutator {x,p} psi = (2 x p - i hbar) psi
WaveFunction apply_sym_xp(const WaveFunction& psi);

cplx expectation(const WaveFunction& psi, Obs op);
cplx expectation(const WaveFunction& psi, Obs op, const Potential& pot);

OperatorCorrelation correlation(const WaveFunction& psi, Obs B, Obs C);
OperatorCorrelation correlation(const WaveFunction& psi, Obs B, Obs C,
                                const Potential& pot);

// All five moments in one pass (single transform for the p side).
MomentState moments(const WaveFunction& psi);

// Gaussian exp(-beta (x-q)^2 + i p x / hbar), normalized on the grid.
// Warns when q is closer than 5 sigma_x to either edge.
WaveFunction gaussian_packet(const GridPtr& grid, cplx beta, double q, double p);

double edge_mass(const WaveFunction& psi);  // |psi|^2 dx in outermost 2 cells/side

}  // namespace qsd
