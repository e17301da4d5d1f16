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

#include <Eigen/Dense>

#include "qsd/hilbert.hpp"

namespace qsd {

// rho(x_i, x_j) on the grid; trace convention sum_i rho_ii * dx = 1.
struct DensityMatrix {
    GridPtr grid;
    Eigen::MatrixXcd mat;

    static DensityMatrix zero(const GridPtr& g) {
        return {g, Eigen::MatrixXcd::Zero(long(g->n), long(g->n))};
    }
    static DensityMatrix from_pure(const WaveFunction& psi);
};

double trace(const DensityMatrix& rho);            // real part of sum diag * dx
double hermiticity_defect(const DensityMatrix& rho);  // max |rho - rho^dag|
double purity(const DensityMatrix& rho);           // Tr(rho^2) dx^2
double min_eigenvalue(const DensityMatrix& rho);   // of rho*dx (probability weights)
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// <phi| rho |psi> with dx^2 weight
cplx matrix_element(const WaveFunction& phi, const DensityMatrix& rho,
                    const WaveFunction& psi);

// diagnostic moments of the position distribution rho_ii dx
double position_variance(const DensityMatrix& rho);

}  // namespace qsd
