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

#include "qsd/density_matrix.hpp"
#include "qsd/model.hpp"

namespace qsd {

// Right-hand side of the master equation in the explicit x-p form:
// drho/dt = -(i/hbar)[H0 + (c - hbar a b/2){x,p}, rho] - i a b [x, {rho, p}]
//           - a^2/2 [x,[x,rho]] - b^2/2 [p,[p,rho]].
// Mixed-representation evaluation: x-diagonal terms in position space,
// p-diagonal ones in momentum space.
DensityMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho);

// Classical RK4 on the vectorized matrix. Monitors trace and hermiticity each
// step and throws StabilityViolation when either drifts beyond 1e-6.
DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho0,
                     double t, double dt);

// Same propagator without the density-matrix monitors; valid for any operator
// (the generator is linear), used on projected non-hermitian blocks.
Eigen::MatrixXcd evolve_raw(const LindbladModel& model, const GridPtr& grid,
                            Eigen::MatrixXcd m, double t, double dt);

// dt with margin against the kinetic scale and the double-commutator decay
// rates on this grid.
double suggest_dt(const LindbladModel& model, const Grid& grid);

}  // namespace qsd
