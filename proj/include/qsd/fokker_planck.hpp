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

#include "qsd/gaussian.hpp"
#include "qsd/model.hpp"
#include "qsd/phase_space.hpp"

namespace qsd {

// Diffusion coefficients of the phase-space equation for the packet centres:
//   df/dt = -(p/m) df/dq + d/dp[(V'(q) + 2 hbar a b p) f]
//           + d_pp f_pp + d_qq f_qq + d_pq f_qp
// d_pp = |sigma(p,L)|^2, d_qq = |sigma(x,L)|^2, d_pq = 2 Re(sigma(x,L) sigma(L,p)),
// evaluated on the stationary packet.
struct FPCoefficients {
    double d_pp = 0, d_qq = 0, d_pq = 0;
    std::optional<double> high_t_ratio;  // d_pp / (2 m gamma kT), QBM models
};

FPCoefficients coefficients(const LindbladModel& model, const StationaryParams& params);

// Explicit dimension-split finite-volume step: upwind advection, centered
// diffusion, mixed term by centered differences; reflecting (zero-flux)
// boundaries, so mass is conserved identically.
PhaseSpaceField evolve_fp(const FPCoefficients& coeffs, const LindbladModel& model,
                          const PhaseSpaceField& f0, double t, double dt);

// largest stable step for this lattice (advective and diffusive bounds, 0.4 safety)
double fp_suggest_dt(const FPCoefficients& coeffs, const LindbladModel& model,
                     const PhaseSpaceField& proto);

// Propagator column: evolve a unit impulse placed at the cell containing (q,p).
PhaseSpaceField fp_propagator(const FPCoefficients& coeffs, const LindbladModel& model,
                              const PhaseSpaceField& proto, double q, double p,
                              double t, double dt);

// exp(-p^2/(2 m kT) - V(q)/kT), normalized on the lattice
PhaseSpaceField maxwell_boltzmann_field(const LindbladModel& model, double kT,
                                        PhaseSpaceField proto);

// Stationary covariance of the linearized (harmonic) flow: solves
// A S + S A^T + Q = 0 for A = [[0, 1/m], [-m w^2, -2 hbar a b]],
// Q = [[2 d_qq, d_pq], [d_pq, 2 d_pp]]. Returns {S_qq, S_qp, S_pp}.
struct StationaryCovariance {
    double s_qq = 0, s_qp = 0, s_pp = 0;
};
StationaryCovariance fp_stationary_covariance(const FPCoefficients& coeffs,
                                              const LindbladModel& model);

// first and second moments of a field
struct FieldMoments {
    double q_mean = 0, p_mean = 0, var_q = 0, var_p = 0, cov_qp = 0;
};
FieldMoments field_moments(const PhaseSpaceField& f);

}  // namespace qsd
