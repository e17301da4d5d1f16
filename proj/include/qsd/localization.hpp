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

#include <cstdint>
#include <optional>

#include "qsd/gaussian.hpp"
#include "qsd/model.hpp"
#include "qsd/noise.hpp"

namespace qsd {

// Relative deviations from the stationary second moments:
// (Dx)^2 = sigma_x2 (1+X), (Dp)^2 = sigma_p2 (1+Y), R = R0 (1+Z).
struct DeviationCoords {
    double x_dev = 0, y_dev = 0, z_dev = 0;
};

// Dispersion of A = p - 2 i hbar beta x; zero exactly on the coherent family.
double delta_A2(const WaveFunction& psi, const StationaryParams& params, double hbar);
double delta_A2_from_moments(const MomentState& m, const StationaryParams& params,
                             double hbar);
double delta_A2_from_deviation(const DeviationCoords& dev, const StationaryParams& params);

// Linear-term coefficients of the Lyapunov drift, in both the defining form
// and the closed forms that the fixed-point conditions imply.
struct LyapunovCoefficients {
    double c1_def = 0, c2_def = 0, c3_def = 0;  // from the drift expansion
    double c1_closed = 0;                       // -hbar^2 a^2/2 - 2 a^2 R0^2 - 2 b^2 sigma_p^4
    double c3_closed = 0;                       // -2 R0^2 c1 / (sigma_x2 sigma_p2)
};
LyapunovCoefficients lyapunov_coefficients(const StationaryParams& params,
                                           const LindbladModel& model);

// Mean drift of (DA)^2: the regrouped negative-semidefinite form.
double dA2_drift(const StationaryParams& params, const DeviationCoords& dev,
                 const LindbladModel& model);
// Same quantity from the raw expansion (linear + quadratic in X,Y,Z with the
// defining coefficients); agrees with dA2_drift to rounding.
double dA2_drift_expanded(const StationaryParams& params, const DeviationCoords& dev,
                          const LindbladModel& model);

// Uniform draw over the admissible region: X,Y in (-1, hi], Z in [-z_hi, z_hi],
// rejected unless var_x var_p - R^2 >= hbar^2/4.
DeviationCoords sample_admissible(const StationaryParams& params, double hbar,
                                  NoiseProcess& rng, double hi = 3.0, double z_hi = 2.0);

struct RateEstimate {
    double tau = 0;                        // sigma_p2 / |c1|
    std::optional<double> tau_thermal;     // sqrt(hbar/(gamma kT)), QBM models
    std::optional<double> tau_superposition;          // 1/(l^2 a^2)
    std::optional<double> tau_superposition_thermal;  // hbar^2/(l^2 m gamma kT)
};

RateEstimate estimate_rates(const StationaryParams& params, const LindbladModel& model,
                            std::optional<double> ell = std::nullopt);

struct LocalizationSeries {
    std::vector<double> times;
    std::vector<double> mean_dA2;
    double r2_isotonic = 0;   // variance explained by the best decreasing fit
    bool monotone_ok = false; // r2 >= 0.95 (or series flat at the noise floor)
    bool envelope_ok = false; // mean <= mean(0) exp(c1 t / sigma_p2) (1 + 5/sqrt(n))
    double efold_time = 0;    // first crossing of mean(0)/e, interpolated
};

struct LocalizationReport {
    std::vector<LocalizationSeries> series;
    bool scope_warning = false;  // non-quadratic potential
    bool all_ok = false;
};

LocalizationReport verify_localization(const LindbladModel& model,
                                       const std::vector<WaveFunction>& psi0_family,
                                       std::size_t n_traj, double t, double dt,
                                       std::uint64_t base_seed,
                                       std::size_t record_every = 10);

// Best nonincreasing least-squares fit (pool adjacent violators); returns
// the fitted values.
std::vector<double> isotonic_decreasing_fit(const std::vector<double>& y);

}  // namespace qsd
