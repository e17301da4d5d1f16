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

#include "qsd/ensemble.hpp"
#include "qsd/master.hpp"

namespace qsd {

struct PhaseSpaceCell {
    double q_lo = 0, q_hi = 0, p_lo = 0, p_hi = 0;
    double area_planck(double hbar) const {  // in units of 2 pi hbar
        return (q_hi - q_lo) * (p_hi - p_lo) / (2.0 * M_PI * hbar);
    }
    double q_center() const { return 0.5 * (q_lo + q_hi); }
    double p_center() const { return 0.5 * (p_lo + p_hi); }
    bool contains(double q, double p) const {
        return q >= q_lo && q < q_hi && p >= p_lo && p < p_hi;
    }
};

// P = integral over the cell of |psi_qp><psi_qp| dq dp / (2 pi hbar),
// midpoint Riemann sum at spacing <= (sigma_x/2, sigma_p/2). Approximate
// projector: hermitian, spectrum within [-eps, 1+small].
struct QuasiProjector {
    PhaseSpaceCell cell;
    Eigen::MatrixXcd mat;  // integral kernel; products need a dx weight
    double dx = 0;         // grid spacing of the kernel discretization
};

QuasiProjector build_projector(const PhaseSpaceCell& cell, const StationaryParams& params,
                               const GridPtr& grid);

// 3 x 3 tiling centred on (0,0) with cell sizes (dq, dp)
std::vector<PhaseSpaceCell> tile_3x3(double dq, double dp);

// apply kernel: (P psi), and kernel products with the dx weight
WaveFunction apply_kernel(const QuasiProjector& P, const WaveFunction& psi);
DensityMatrix sandwich(const QuasiProjector& A, const DensityMatrix& rho,
                       const QuasiProjector& B);  // A rho B
double spectrum_min(const QuasiProjector& P);
double spectrum_max(const QuasiProjector& P);
double idempotence_defect(const QuasiProjector& P);  // ||P^2 - P||_op

// Two-time decoherence functional over a common cell set:
// D[(a1,a2),(a1',a2')] = Tr(P_{a2} K_{t1->t2}[P_{a1} K_{t0->t1}[rho0] P_{a1'}] P_{a2'})
struct DecoherenceFunctional {
    std::size_t n_cells = 0;
    Eigen::MatrixXcd d;          // (n_cells^2) x (n_cells^2), row = a1*n+a2
    double completeness_defect = 0;  // |1 - sum of diagonals|
    double epsilon = 0;          // max off-diagonal ratio over admissible pairs
    std::size_t skipped_pairs = 0;   // below the diagonal floor
    std::vector<double> probabilities() const;  // real diagonal
};

DecoherenceFunctional decoherence_functional_2(const LindbladModel& model,
                                               const DensityMatrix& rho0,
                                               const std::vector<QuasiProjector>& cells,
                                               double t01, double t12, double dt);

// Diagonal of D vs Fokker-Planck cell-transition probabilities for an initial
// coherent mixture sum_k w_k |psi_{q_k p_k}><psi_{q_k p_k}|.
struct HistoryComparison {
    std::vector<double> p_functional;  // diag D, row-major (a1, a2)
    std::vector<double> p_fp;
    double max_abs_diff = 0;
    std::size_t modal_history = 0;     // argmax of p_functional
    bool modal_classical = false;      // 2nd cell holds the classically evolved 1st centre
    double epsilon = 0;                // copied from the functional
    double completeness_defect = 0;
};

struct InitialMixtureComponent {
    double weight, q, p;
};

HistoryComparison history_probabilities_vs_fp(
    const LindbladModel& model, const std::vector<InitialMixtureComponent>& mixture,
    const StationaryParams& params, const GridPtr& grid,
    const std::vector<PhaseSpaceCell>& cells, double t01, double t12, double dt_master,
    const PhaseSpaceField& fp_proto, double dt_fp);

// damped classical orbit (q' = p/m, p' = -V' - 2 hbar a b p), RK4
void classical_orbit(const LindbladModel& model, double& q, double& p, double t, double dt);

}  // namespace qsd
