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
#include "qsd/fokker_planck.hpp"
#include "qsd/trajectory.hpp"

namespace qsd {

// Trajectory j runs with seed base_seed + j; the partition is reproducible
// and prefix-stable (the first n of a larger ensemble are the n-ensemble).
struct EnsembleSpec {
    std::size_t n_traj = 1;
    std::uint64_t base_seed = 0;
    LindbladModel model;
    WaveFunction psi0;
    double t = 0;
    double dt = 1e-3;
    std::size_t record_every = 10;
    TrajectoryOptions traj;  // params / scheme / snapshot times
    int threads = 0;         // 0 = hardware concurrency
};

// Ensemble with per-trajectory records retained; the reductions below read
// from here so one run serves several analyses.
struct EnsembleRun {
    EnsembleSpec spec;
    std::vector<TrajectoryRecord> records;

    // index of the recorded time closest to t (throws if off-lattice)
    std::size_t time_index(double t) const;
    // ensemble-mean of a recorded series
    std::vector<double> mean_delta_A2() const;
    std::vector<MomentState> mean_moments() const;
    const std::vector<double>& times() const { return records.front().times; }
};

EnsembleRun run_ensemble(const EnsembleSpec& spec);

// rho = (1/n) sum_j |psi_j(t)><psi_j(t)| accumulated in seed order (bitwise
// reproducible). Requires spec.traj.snapshot_at to contain at_time.
DensityMatrix reconstruct_rho(const EnsembleRun& run, double at_time);

// Histogram of trajectory centres (<x>_j, <p>_j); normalized to unit mass.
// Warns when at_time < 3 tau (the weight reading presumes localized packets).
struct PhaseSpaceHistogram {
    PhaseSpaceField density;
    std::size_t n_samples = 0;
    std::size_t n_outside = 0;  // samples off the lattice (dropped)
};

PhaseSpaceHistogram estimate_f(const EnsembleRun& run, double at_time,
                               std::size_t bins_q, std::size_t bins_p,
                               double q_lo, double q_hi, double p_lo, double p_hi,
                               std::optional<double> tau = std::nullopt);
// pooled over several recorded times (stationary-regime estimator)
PhaseSpaceHistogram estimate_f(const EnsembleRun& run, const std::vector<double>& at_times,
                               std::size_t bins_q, std::size_t bins_p,
                               double q_lo, double q_hi, double p_lo, double p_hi,
                               std::optional<double> tau = std::nullopt);

// Normalized off-diagonal matrix elements between coherent probes.
struct DiagonalityEntry {
    double q1, p1, q2, p2;
    double r;          // |<1|rho|2>| / sqrt(<1|rho|1><2|rho|2>)
    bool separated;    // |dq| >= 10 sigma_x or |dp| >= 10 sigma_p
    bool degenerate;   // diagonal below floor, skipped from the summary
};
struct DiagonalityReport {
    std::vector<DiagonalityEntry> entries;
    double max_r_separated = 0;
};
DiagonalityReport coherent_diagonality(const DensityMatrix& rho,
                                       const StationaryParams& params,
                                       const std::vector<std::array<double, 4>>& probe_pairs);

// Q(q,p) = <psi_qp| rho |psi_qp> / (2 pi hbar), normalized on the lattice.
PhaseSpaceField husimi(const DensityMatrix& rho, const StationaryParams& params,
                       PhaseSpaceField proto);

}  // namespace qsd
