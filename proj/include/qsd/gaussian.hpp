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

#include "qsd/hilbert.hpp"
#include "qsd/model.hpp"

namespace qsd {

// Shape of the stationary Gaussian: beta and the fixed-point second moments.
// Invariants: Re(beta) > 0; sigma_x2*sigma_p2 - r0^2 = hbar^2/4;
// beta = (1 - 2 i r0/hbar) / (4 sigma_x2).
struct StationaryParams {
    cplx beta;
    double sigma_x2 = 0;
    double sigma_p2 = 0;
    double r0 = 0;
    double valid_at = 0;          // where V'' was evaluated
    bool ambiguous_root = false;  // both quadratic roots normalizable
    // residuals of the three moment fixed-point conditions
    double residual_var_x = 0, residual_var_p = 0, residual_r = 0;
};

// Root of 4(b^2 + i/(m hbar)) hbar^2 beta^2 + 4 hbar a b beta - (a^2 + i V''(x_bar)/hbar) = 0
// with Re(beta) > 0, plus derived fixed-point moments.
StationaryParams solve_beta(const LindbladModel& model, double x_bar = 0.0);

// Grid realization of the stationary packet centred at (q, p).
WaveFunction coherent_state(const GridPtr& grid, const StationaryParams& params,
                            double q, double p, double hbar);

// |<psi_{q,p}|psi_{q',p'}>|^2 in closed form (same beta).
double coherent_overlap2(const StationaryParams& params, double hbar,
                         double q1, double p1, double q2, double p2);

// Deterministic drift of the five moments under the quadratic truncation of
// the potential about x_mean.
MomentState reduced_moment_flow(const LindbladModel& model, const MomentState& state);

// Exact-expectation drift of ((Dx)^2, (Dp)^2, R) for an arbitrary grid state
// (the V-dependent covariances evaluated on the grid, no Taylor truncation).
struct VarianceDrift {
    double d_var_x = 0, d_var_p = 0, d_r = 0;
};
VarianceDrift variance_drift_exact(const LindbladModel& model, const WaveFunction& psi);

}  // namespace qsd
