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

#include "qsd/density_matrix.hpp"

namespace qsd {

DensityMatrix DensityMatrix::from_pure(const WaveFunction& psi) {
    const long n = long(psi.size());
    Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), n);
    DensityMatrix rho{psi.grid, Eigen::MatrixXcd(n, n)};
    rho.mat.noalias() = v * v.adjoint();
    return rho;
}

double trace(const DensityMatrix& rho) {
    return rho.mat.trace().real() * rho.grid->dx;
}

double hermiticity_defect(const DensityMatrix& rho) {
    return (rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff();
}

double purity(const DensityMatrix& rho) {
    const double dx = rho.grid->dx;
    return (rho.mat * rho.mat).trace().real() * dx * dx;
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        0.5 * (rho.mat + rho.mat.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() * rho.grid->dx;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_grid(*a.grid, *b.grid);
    Eigen::MatrixXcd d = a.mat - b.mat;
    d = 0.5 * (d + d.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum() * a.grid->dx;
}

cplx matrix_element(const WaveFunction& phi, const DensityMatrix& rho,
                    const WaveFunction& psi) {
    require_same_grid(*phi.grid, *rho.grid);
    require_same_grid(*psi.grid, *rho.grid);
    const long n = long(rho.grid->n);
    Eigen::Map<const Eigen::VectorXcd> vphi(phi.amp.data(), n);
    Eigen::Map<const Eigen::VectorXcd> vpsi(psi.amp.data(), n);
    const double dx = rho.grid->dx;
    return (vphi.adjoint() * rho.mat * vpsi)(0) * dx * dx;
}

double position_variance(const DensityMatrix& rho) {
    const Grid& g = *rho.grid;
    double m0 = 0, m1 = 0, m2 = 0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double w = rho.mat(long(j), long(j)).real() * g.dx;
        m0 += w;
        m1 += w * g.x[j];
        m2 += w * g.x[j] * g.x[j];
    }
    m1 /= m0;
    m2 /= m0;
    return m2 - m1 * m1;
}

}  // namespace qsd
