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

#include <optional>

#include "qsd/gaussian.hpp"
#include "qsd/hilbert.hpp"
#include "qsd/model.hpp"
#include "qsd/noise.hpp"

namespace qsd {

// One normalized step of the stochastic pure-state equation
//   |dpsi> = -(i/hbar) H |psi> dt
//            + (<L^dag> L - L^dag L/2 - <L^dag><L>/2) |psi> dt
//            + (L - <L>) |psi> dxi
// with L = a x + i b p and H = H0 + c {x,p}.  Expectations are taken on the
// incoming state (Ito, non-anticipating).
//
// split: exact one-step H0 unitary (half-V, spectral kinetic, half-V), then
//        Euler-Maruyama for the rest. Stable, weak order 1.
// euler: plain Euler-Maruyama on everything (the H0 term included); only
//        usable for small dt * E_max.
enum class Scheme { split, euler };

struct StepStats {
    double prenorm = 1.0;  // state norm before renormalization
};

WaveFunction ito_step(const LindbladModel& model, const WaveFunction& psi,
                      double dt, cplx dxi, Scheme scheme = Scheme::split,
                      StepStats* stats = nullptr);

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<MomentState> moments;
    std::vector<double> delta_A2;  // filled when stationary params were given
    std::vector<WaveFunction> snapshots;
    std::vector<double> snapshot_times;
    WaveFunction final_state;
    int wrap_warnings = 0;
};

struct TrajectoryOptions {
    std::optional<StationaryParams> params;  // enables the (DA)^2 series
    std::vector<double> snapshot_at;         // times to keep full states
    Scheme scheme = Scheme::split;
};

TrajectoryRecord run_trajectory(const LindbladModel& model, const WaveFunction& psi0,
                                double t, double dt, NoiseProcess noise,
                                std::size_t record_every,
                                const TrajectoryOptions& opts = {});

// Single-step Monte Carlo drift of the five moments vs the analytic
// right-hand sides evaluated on psi (exact grid expectations for the
// potential terms).
struct DriftCheck {
    struct Entry {
        double measured = 0, analytic = 0, stderr_ = 0, z = 0;
    };
    Entry x_mean, p_mean, var_x, var_p, r;
};

DriftCheck moment_drift_check(const LindbladModel& model, const WaveFunction& psi,
                              std::size_t n_samples, double dt,
                              std::uint64_t seed = 1234);

// Internal generalized step used by the phase-invariance tests:
// L = ca x + cb p with complex coefficients.
WaveFunction ito_step_general(const LindbladModel& model, cplx ca, cplx cb,
                              const WaveFunction& psi, double dt, cplx dxi,
                              Scheme scheme = Scheme::split,
                              StepStats* stats = nullptr);

// dt = min(0.05 hbar/E_max, 0.05 tau) — the euler-scheme default; split runs
// can take larger steps (physics scales only).
double suggest_traj_dt(const LindbladModel& model, const Grid& grid,
                       const StationaryParams& params);

}  // namespace qsd
