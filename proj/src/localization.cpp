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

#include "qsd/localization.hpp"

#include <cmath>

#include "qsd/trajectory.hpp"

namespace qsd {

double delta_A2_from_moments(const MomentState& m, const StationaryParams& params,
                             double hbar) {
    const cplx beta = params.beta;
    return m.var_p + 4.0 * hbar * hbar * std::norm(beta) * m.var_x +
           4.0 * hbar * beta.imag() * m.r - 2.0 * hbar * hbar * beta.real();
}

double delta_A2(const WaveFunction& psi, const StationaryParams& params, double hbar) {
    return delta_A2_from_moments(moments(psi), params, hbar);
}

double delta_A2_from_deviation(const DeviationCoords& dev, const StationaryParams& p) {
    return p.sigma_p2 * (dev.x_dev + dev.y_dev) -
           2.0 * p.r0 * p.r0 / p.sigma_x2 * dev.z_dev;
}

LyapunovCoefficients lyapunov_coefficients(const StationaryParams& p,
                                           const LindbladModel& mod) {
    const double a = mod.a, b = mod.b, h = mod.hbar, m = mod.m;
    const double vpp = mod.potential.d2V(p.valid_at);
    const double sx2 = p.sigma_x2, sp2 = p.sigma_p2, r0 = p.r0;
    LyapunovCoefficients c;
    c.c1_def = -h * h * a * a + 2.0 * h * a * b * sp2 + 2.0 * r0 * vpp;
    c.c2_def = -2.0 * h * a * b * sp2 - 2.0 * r0 * sp2 / (m * sx2) -
               h * h * b * b * sp2 / sx2;
    c.c3_def = 2.0 * r0 * sp2 / (m * sx2) - 2.0 * r0 * vpp;
    c.c1_closed = -0.5 * h * h * a * a - 2.0 * a * a * r0 * r0 - 2.0 * b * b * sp2 * sp2;
    c.c3_closed = -2.0 * r0 * r0 * c.c1_closed / (sx2 * sp2);
    return c;
}

double dA2_drift(const StationaryParams& p, const DeviationCoords& dev,
                 const LindbladModel& mod) {
    const double a = mod.a, b = mod.b, h = mod.hbar;
    const double sx2 = p.sigma_x2, sp2 = p.sigma_p2, r0 = p.r0;
    const double X = dev.x_dev, Y = dev.y_dev, Z = dev.z_dev;
    const double c1 = -0.5 * h * h * a * a - 2.0 * a * a * r0 * r0 - 2.0 * b * b * sp2 * sp2;
    const double da2 = delta_A2_from_deviation(dev, p);
    const double ym = Y - r0 * r0 / (sp2 * sx2) * Z;
    return c1 / sp2 * da2 - 0.5 * h * h * a * a * X * X -
           2.0 * a * a * r0 * r0 * (X - Z) * (X - Z) -
           2.0 * b * b * sp2 * sp2 * ym * ym -
           0.5 * h * h * b * b * r0 * r0 / (sx2 * sx2) * Z * Z;
}

double dA2_drift_expanded(const StationaryParams& p, const DeviationCoords& dev,
                          const LindbladModel& mod) {
    const double a = mod.a, b = mod.b, h = mod.hbar;
    const double sx2 = p.sigma_x2, sp2 = p.sigma_p2, r0 = p.r0;
    const double X = dev.x_dev, Y = dev.y_dev, Z = dev.z_dev;
    const LyapunovCoefficients c = lyapunov_coefficients(p, mod);
    return c.c1_def * X + c.c2_def * Y + c.c3_def * Z -
           2.0 * a * a * (r0 * r0 + 0.25 * h * h) * X * X -
           2.0 * b * b * sp2 * sp2 * Y * Y -
           2.0 * r0 * r0 * (a * a + b * b * sp2 / sx2) * Z * Z +
           4.0 * a * a * r0 * r0 * X * Z +
           4.0 * b * b * sp2 / sx2 * r0 * r0 * Y * Z;
}

DeviationCoords sample_admissible(const StationaryParams& p, double hbar,
                                  NoiseProcess& rng, double hi, double z_hi) {
    for (;;) {
        DeviationCoords d;
        d.x_dev = -1.0 + (1.0 + hi) * rng.unit();
        d.y_dev = -1.0 + (1.0 + hi) * rng.unit();
        d.z_dev = -z_hi + 2.0 * z_hi * rng.unit();
        const double vx = p.sigma_x2 * (1.0 + d.x_dev);
        const double vp = p.sigma_p2 * (1.0 + d.y_dev);
        const double r = p.r0 * (1.0 + d.z_dev);
        if (vx > 0 && vp > 0 && vx * vp - r * r >= 0.25 * hbar * hbar) return d;
    }
}

RateEstimate estimate_rates(const StationaryParams& p, const LindbladModel& mod,
                            std::optional<double> ell) {
    RateEstimate r;
    r.tau = 1.0 / (2.0 * mod.a * mod.a * p.sigma_x2 + 2.0 * mod.b * mod.b * p.sigma_p2);
    if (mod.qbm)
        r.tau_thermal = std::sqrt(mod.qbm->hbar / (mod.qbm->gamma * mod.qbm->kT));
    if (ell) {
        if (!(*ell > 0)) throw NonPositiveParameter("separation must be positive");
        r.tau_superposition = 1.0 / (*ell * *ell * mod.a * mod.a);
        if (mod.qbm)
            r.tau_superposition_thermal = mod.qbm->hbar * mod.qbm->hbar /
                                          (*ell * *ell * mod.qbm->m * mod.qbm->gamma *
                                           mod.qbm->kT);
    }
    return r;
}

std::vector<double> isotonic_decreasing_fit(const std::vector<double>& y) {
    // PAVA on the negated series (nondecreasing fit of -y)
    const std::size_t n = y.size();
    std::vector<double> level(n), weight(n);
    std::vector<std::size_t> len(n);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        level[m] = -y[i];
        weight[m] = 1;
        len[m] = 1;
        ++m;
        while (m > 1 && level[m - 2] > level[m - 1]) {
            const double w = weight[m - 2] + weight[m - 1];
            level[m - 2] = (level[m - 2] * weight[m - 2] + level[m - 1] * weight[m - 1]) / w;
            weight[m - 2] = w;
            len[m - 2] += len[m - 1];
            --m;
        }
    }
    std::vector<double> fit;
    fit.reserve(n);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t k = 0; k < len[b]; ++k) fit.push_back(-level[b]);
    return fit;
}

LocalizationReport verify_localization(const LindbladModel& model,
                                       const std::vector<WaveFunction>& psi0_family,
                                       std::size_t n_traj, double t, double dt,
                                       std::uint64_t base_seed, std::size_t record_every) {
    LocalizationReport report;
    if (!model.potential.quadratic()) {
        report.scope_warning = true;
        warnings::raise(warnings::Kind::scope,
                        "localization theorem holds for quadratic potentials; "
                        "results for " + model.potential.name() + " are exploratory");
    }
    const StationaryParams params = solve_beta(model, 0.0);
    const LyapunovCoefficients lc = lyapunov_coefficients(params, model);
    const double rate = lc.c1_closed / params.sigma_p2;
    const double slack = 1.0 + 5.0 / std::sqrt(double(n_traj));

    bool all_ok = true;
    std::uint64_t seed = base_seed;
    for (const WaveFunction& psi0 : psi0_family) {
        LocalizationSeries s;
        std::vector<double> sum;
        TrajectoryOptions opts;
        opts.params = params;
        for (std::size_t j = 0; j < n_traj; ++j) {
            TrajectoryRecord rec = run_trajectory(model, psi0, t, dt,
                                                  NoiseProcess(seed + j), record_every, opts);
            if (sum.empty()) {
                s.times = rec.times;
                sum.assign(rec.delta_A2.size(), 0.0);
            }
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += rec.delta_A2[k];
        }
        seed += n_traj;
        s.mean_dA2.resize(sum.size());
        for (std::size_t k = 0; k < sum.size(); ++k) s.mean_dA2[k] = sum[k] / double(n_traj);

        // decreasing-fit quality
        const std::vector<double> fit = isotonic_decreasing_fit(s.mean_dA2);
        double mean = 0;
        for (double v : s.mean_dA2) mean += v;
        mean /= double(s.mean_dA2.size());
        double ss_tot = 0, ss_res = 0;
        for (std::size_t k = 0; k < s.mean_dA2.size(); ++k) {
            ss_tot += (s.mean_dA2[k] - mean) * (s.mean_dA2[k] - mean);
            ss_res += (s.mean_dA2[k] - fit[k]) * (s.mean_dA2[k] - fit[k]);
        }
        const double floor = 1e-3 * params.sigma_p2;
        if (ss_tot < floor * floor * double(s.mean_dA2.size())) {
            s.r2_isotonic = 1.0;  // flat at the noise floor
            s.monotone_ok = true;
        } else {
            s.r2_isotonic = 1.0 - ss_res / ss_tot;
            s.monotone_ok = s.r2_isotonic >= 0.95;
        }

        // exponential envelope, Monte Carlo slack
        s.envelope_ok = true;
        const double m0 = s.mean_dA2.front();
        for (std::size_t k = 0; k < s.mean_dA2.size(); ++k) {
            const double bound = (m0 + floor) * std::exp(rate * s.times[k]) * slack + floor;
            if (s.mean_dA2[k] > bound) s.envelope_ok = false;
        }

        // e-folding time
        s.efold_time = s.times.back();
        const double target = m0 / M_E;
        for (std::size_t k = 1; k < s.mean_dA2.size(); ++k) {
            if (s.mean_dA2[k] <= target) {
                const double y0 = s.mean_dA2[k - 1], y1 = s.mean_dA2[k];
                const double f = (y0 - target) / std::max(y0 - y1, 1e-300);
                s.efold_time = s.times[k - 1] + f * (s.times[k] - s.times[k - 1]);
                break;
            }
        }
        all_ok = all_ok && s.monotone_ok && s.envelope_ok;
        report.series.push_back(std::move(s));
    }
    report.all_ok = all_ok;
    return report;
}

}  // namespace qsd
