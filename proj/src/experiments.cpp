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

#include "qsd/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "qsd/ensemble.hpp"
#include "qsd/histories.hpp"
#include "qsd/localization.hpp"
#include "qsd/master.hpp"
#include "qsd/report.hpp"

namespace qsd {
namespace {

namespace fs = std::filesystem;

nlohmann::json config_echo(const ExperimentConfig& c) {
    nlohmann::json j;
    j["experiment"] = c.experiment;
    j["model"] = {{"kind", c.model_kind}, {"a", c.a},       {"b", c.b},
                  {"m", c.m},             {"hbar", c.hbar}, {"gamma", c.gamma},
                  {"kT", c.kT},           {"potential", c.potential}};
    j["grid"] = {{"n", c.n}, {"x_min", c.x_min}, {"x_max", c.x_max}};
    j["integration"] = {{"t", c.t},
                        {"dt", c.dt},
                        {"n_traj", c.n_traj},
                        {"base_seed", c.base_seed},
                        {"record_every", c.record_every}};
    return j;
}

void write_mean_series(const std::string& path, const EnsembleRun& run) {
    const auto mm = run.mean_moments();
    const bool has_da2 = !run.records.front().delta_A2.empty();
    std::vector<std::string> cols = {"t", "x_mean", "p_mean", "var_x", "var_p", "r"};
    if (has_da2) cols.push_back("delta_A2");
    std::vector<std::vector<double>> rows;
    const auto da2 = has_da2 ? run.mean_delta_A2() : std::vector<double>{};
    for (std::size_t k = 0; k < run.times().size(); ++k) {
        std::vector<double> row = {run.times()[k], mm[k].x_mean, mm[k].p_mean,
                                   mm[k].var_x,    mm[k].var_p,  mm[k].r};
        if (has_da2) row.push_back(da2[k]);
        rows.push_back(std::move(row));
    }
    write_series_csv(path, cols, rows);
}

WaveFunction two_packet_state(const GridPtr& grid, const StationaryParams& params,
                              double separation) {
    WaveFunction a = coherent_state(grid, params, -0.5 * separation, 0.0, grid->hbar);
    WaveFunction b = coherent_state(grid, params, +0.5 * separation, 0.0, grid->hbar);
    WaveFunction sum = a;
    for (std::size_t j = 0; j < sum.size(); ++j) sum.amp[j] += b.amp[j];
    return normalize(sum);
}

int experiment_stationary(const ExperimentConfig& cfg, int threads, Report& rep,
                          const fs::path& out) {
    const LindbladModel model = cfg.build_model();
    const GridPtr grid = cfg.build_grid();
    const StationaryParams sp = solve_beta(model, 0.0);

    rep.value("beta_re", sp.beta.real());
    rep.value("beta_im", sp.beta.imag());
    rep.value("sigma_x2", sp.sigma_x2);
    rep.value("sigma_p2", sp.sigma_p2);
    rep.value("r0", sp.r0);
    rep.check_le("fixed_point_residuals", "moment flow vanishes at the solved shape",
                 std::abs(sp.residual_var_x) + std::abs(sp.residual_var_p) +
                     std::abs(sp.residual_r),
                 1e-8);
    rep.check_abs("uncertainty_product", "sigma_x2 sigma_p2 - r0^2 = hbar^2/4",
                  sp.sigma_x2 * sp.sigma_p2 - sp.r0 * sp.r0,
                  0.25 * model.hbar * model.hbar, 1e-10);

    EnsembleSpec es;
    es.n_traj = cfg.n_traj;
    es.base_seed = cfg.base_seed;
    es.model = model;
    es.psi0 = coherent_state(grid, sp, 0.0, 0.0, model.hbar);
    es.t = cfg.t;
    es.dt = cfg.dt;
    es.record_every = cfg.record_every;
    es.traj.params = sp;
    es.threads = threads;
    const EnsembleRun run = run_ensemble(es);
    write_mean_series((out / "series.csv").string(), run);

    const auto mm = run.mean_moments();
    double worst_vx = 0, worst_vp = 0, worst_r = 0;
    for (const auto& m : mm) {
        worst_vx = std::max(worst_vx, std::abs(m.var_x - sp.sigma_x2) / sp.sigma_x2);
        worst_vp = std::max(worst_vp, std::abs(m.var_p - sp.sigma_p2) / sp.sigma_p2);
        worst_r = std::max(worst_r, std::abs(m.r - sp.r0) / std::abs(sp.r0));
    }
    rep.check_le("ensemble_var_x_hold", "mean (Dx)^2 stays within 10% of the fixed point",
                 worst_vx, 0.10);
    rep.check_le("ensemble_var_p_hold", "mean (Dp)^2 stays within 10% of the fixed point",
                 worst_vp, 0.10);
    rep.check_le("ensemble_r_hold", "mean R stays within 10% of the fixed point",
                 worst_r, 0.10);
    return 0;
}

int experiment_duality(const ExperimentConfig& cfg, int threads, Report& rep,
                       const fs::path& out) {
    const LindbladModel model = cfg.build_model();
    const GridPtr grid = cfg.build_grid();
    const StationaryParams sp = solve_beta(model, 0.0);

    EnsembleSpec es;
    es.n_traj = cfg.n_traj;
    es.base_seed = cfg.base_seed;
    es.model = model;
    es.psi0 = coherent_state(grid, sp, 0.0, 0.0, model.hbar);
    es.t = cfg.t;
    es.dt = cfg.dt;
    es.record_every = cfg.record_every;
    es.traj.params = sp;
    es.traj.snapshot_at = {cfg.t};
    es.threads = threads;
    const EnsembleRun run = run_ensemble(es);
    write_mean_series((out / "series.csv").string(), run);

    const DensityMatrix rho0 = DensityMatrix::from_pure(es.psi0);
    const double dt_m = std::min(cfg.dt, suggest_dt(model, *grid));
    const DensityMatrix rho_ref = evolve(model, rho0, cfg.t, dt_m);
    rep.value("master_purity", purity(rho_ref));
    rep.value("master_min_eigenvalue", min_eigenvalue(rho_ref));

    // n-sweep on nested prefixes
    std::vector<std::size_t> ns = {cfg.n_traj / 16, cfg.n_traj / 4, cfg.n_traj};
    std::vector<double> tds;
    for (std::size_t nsub : ns) {
        if (nsub < 2) throw ConfigError("duality needs n_traj >= 32");
        EnsembleRun sub;
        sub.spec = run.spec;
        sub.records.assign(run.records.begin(), run.records.begin() + long(nsub));
        tds.push_back(trace_distance(reconstruct_rho(sub, cfg.t), rho_ref));
    }
    rep.value("trace_distance_n16", tds[0]);
    rep.value("trace_distance_n4", tds[1]);
    rep.value("trace_distance", tds[2]);
    // log-log slope via least squares over the three points
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double lx = std::log(double(ns[i])), ly = std::log(tds[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    rep.value("mc_slope", slope);
    rep.check_le("trace_distance_to_master",
                 "reconstructed rho matches the direct master integration", tds[2], 0.08);
    rep.check_abs("mc_convergence_slope", "trace distance scales like n^-1/2", slope,
                  -0.5, 0.15);
    return 0;
}

int experiment_localization(const ExperimentConfig& cfg, int threads, Report& rep,
                            const fs::path& out) {
    (void)threads;
    const LindbladModel model = cfg.build_model();
    const GridPtr grid = cfg.build_grid();
    const StationaryParams sp = solve_beta(model, 0.0);
    const double sx = std::sqrt(sp.sigma_x2);

    std::vector<WaveFunction> family;
    family.push_back(coherent_state(grid, sp, 0.0, 0.0, model.hbar));
    family.push_back(two_packet_state(grid, sp, 10.0 * sx));
    family.push_back(gaussian_packet(grid, cplx(sp.beta.real() / 25.0, 0), 0.0, 0.0));

    const LocalizationReport lr = verify_localization(model, family, cfg.n_traj, cfg.t,
                                                      cfg.dt, cfg.base_seed,
                                                      cfg.record_every);
    std::vector<std::string> cols = {"t"};
    for (std::size_t i = 0; i < lr.series.size(); ++i)
        cols.push_back("mean_delta_A2_state" + std::to_string(i));
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < lr.series.front().times.size(); ++k) {
        std::vector<double> row = {lr.series.front().times[k]};
        for (const auto& s : lr.series) row.push_back(s.mean_dA2[k]);
        rows.push_back(std::move(row));
    }
    write_series_csv((out / "series.csv").string(), cols, rows);

    rep.value("scope_warning", lr.scope_warning ? 1.0 : 0.0);
    for (std::size_t i = 0; i < lr.series.size(); ++i) {
        rep.value("r2_isotonic_state" + std::to_string(i), lr.series[i].r2_isotonic);
        rep.value("efold_time_state" + std::to_string(i), lr.series[i].efold_time);
    }
    if (!lr.scope_warning) {
        rep.check_true("mean_dispersion_decreasing",
                       "ensemble-mean dispersion decreases (isotonic fit)",
                       lr.series[1].monotone_ok && lr.series[2].monotone_ok);
        rep.check_true("exponential_decay_envelope",
                       "mean dispersion under the linear-rate envelope",
                       lr.series[0].envelope_ok && lr.series[1].envelope_ok &&
                           lr.series[2].envelope_ok);
        const RateEstimate rates = estimate_rates(sp, model, 10.0 * sx);
        const double efold = lr.series[1].efold_time;
        rep.value("tau_superposition", *rates.tau_superposition);
        rep.check_true("superposition_collapse_decade",
                       "two-packet e-folding within a decade of the estimate",
                       efold <= 10.0 * *rates.tau_superposition &&
                           efold >= 0.1 * *rates.tau_superposition);
    }
    return 0;
}

int experiment_rates(const ExperimentConfig& cfg, int, Report& rep, const fs::path& out) {
    (void)out;
    const LindbladModel model = cfg.build_model();
    const StationaryParams sp = solve_beta(model, 0.0);
    const double ell = 10.0 * std::sqrt(sp.sigma_x2);
    const RateEstimate r = estimate_rates(sp, model, ell);
    const LyapunovCoefficients lc = lyapunov_coefficients(sp, model);

    rep.value("tau", r.tau);
    rep.value("ell", ell);
    if (r.tau_thermal) rep.value("tau_thermal", *r.tau_thermal);
    if (r.tau_superposition) rep.value("tau_superposition", *r.tau_superposition);
    if (r.tau_superposition_thermal)
        rep.value("tau_superposition_thermal", *r.tau_superposition_thermal);
    rep.check_ge("tau_positive", "localization time is positive", r.tau, 0.0);
    rep.check_abs("tau_matches_linear_rate", "tau equals sigma_p2/|c1|",
                  r.tau, sp.sigma_p2 / std::abs(lc.c1_closed), 1e-10);
    rep.check_le("c1_negative", "linear drift coefficient is negative", lc.c1_closed,
                 -1e-12);
    return 0;
}

int experiment_fokker_planck(const ExperimentConfig& cfg, int, Report& rep,
                             const fs::path& out) {
    const LindbladModel model = cfg.build_model();
    const StationaryParams sp = solve_beta(model, 0.0);
    const FPCoefficients co = coefficients(model, sp);
    rep.value("d_pp", co.d_pp);
    rep.value("d_qq", co.d_qq);
    rep.value("d_pq", co.d_pq);
    if (co.high_t_ratio) rep.value("high_t_ratio", *co.high_t_ratio);

    const double kT = model.qbm ? model.qbm->kT : 1.0;
    const double sq = std::sqrt(kT / model.potential.d2V(0.0) * 1.0);
    const double sth_p = std::sqrt(model.m * kT);
    PhaseSpaceField proto = make_field(96, -5 * sq, 5 * sq, 96, -5 * sth_p, 5 * sth_p);
    const PhaseSpaceField mb = maxwell_boltzmann_field(model, kT, proto);

    // start displaced: a tight Gaussian away from equilibrium
    PhaseSpaceField f0 = fill_field(proto, [&](double q, double p) {
        const double dq = q - 2.0 * sq, dp = p;
        return std::exp(-dq * dq / (0.08 * sq * sq) - dp * dp / (0.08 * sth_p * sth_p));
    });
    const double dt = 0.9 * fp_suggest_dt(co, model, proto);
    const double gamma = model.qbm ? model.qbm->gamma : model.friction() / 2.0;
    const double t_total = cfg.t > 0 ? cfg.t : 6.0 / gamma;

    std::vector<std::string> cols = {"t", "l1_to_equilibrium", "mass", "min_value"};
    std::vector<std::vector<double>> rows;
    PhaseSpaceField f = f0;
    const int n_out = 40;
    double efold_rate = 0;
    std::vector<double> ts, l1s;
    for (int k = 0; k <= n_out; ++k) {
        const double tk = t_total * double(k) / n_out;
        if (k > 0) f = evolve_fp(co, model, f, t_total / n_out, dt);
        const double l1 = l1_distance(f, mb);
        ts.push_back(tk);
        l1s.push_back(l1);
        rows.push_back({tk, l1, f.mass(), f.min_value()});
    }
    write_series_csv((out / "series.csv").string(), cols, rows);
    write_field_csv((out / "field_initial.csv").string(), f0);
    write_field_csv((out / "field_final.csv").string(), f);
    write_field_csv((out / "field_equilibrium.csv").string(), mb);

    // envelope rate from the decaying stretch (skip floor region)
    {
        double sx_ = 0, sy_ = 0, sxx_ = 0, sxy_ = 0;
        int cnt = 0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (l1s[i] < 1e-3 || l1s[i] > 0.8 * l1s[0]) continue;
            const double lx = ts[i], ly = std::log(l1s[i]);
            sx_ += lx; sy_ += ly; sxx_ += lx * lx; sxy_ += lx * ly;
            ++cnt;
        }
        if (cnt >= 3)
            efold_rate = -(cnt * sxy_ - sx_ * sy_) / (cnt * sxx_ - sx_ * sx_);
    }
    rep.value("relaxation_rate", efold_rate);
    rep.value("gamma", gamma);
    rep.check_le("mass_conserved", "finite-volume mass drift",
                 std::abs(f.mass() - 1.0), 1e-8);
    rep.check_le("l1_decreased", "distance to equilibrium decreased",
                 l1s.back(), 0.5 * l1s.front());
    rep.check_true("relaxation_rate_order",
                   "equilibration rate within a factor 2 of gamma",
                   efold_rate > 0.5 * gamma && efold_rate < 2.0 * gamma);
    return 0;
}

int experiment_thermalization(const ExperimentConfig& cfg, int threads, Report& rep,
                              const fs::path& out) {
    if (!cfg.build_model().qbm)
        throw ConfigError("thermalization needs model.kind = qbm");
    const LindbladModel model = cfg.build_model();
    const GridPtr grid = cfg.build_grid();
    const StationaryParams sp = solve_beta(model, 0.0);
    const FPCoefficients co = coefficients(model, sp);
    const double kT = model.qbm->kT, gamma = model.qbm->gamma;
    const double w2 = model.potential.d2V(0.0) / model.m;

    EnsembleSpec es;
    es.n_traj = cfg.n_traj;
    es.base_seed = cfg.base_seed;
    es.model = model;
    es.psi0 = coherent_state(grid, sp, 2.0 * std::sqrt(kT / (model.m * w2)), 0.0,
                             model.hbar);
    es.t = cfg.t;
    es.dt = cfg.dt;
    es.record_every = cfg.record_every;
    es.traj.params = sp;
    es.traj.snapshot_at = {cfg.t};
    es.threads = threads;
    const EnsembleRun run = run_ensemble(es);
    write_mean_series((out / "series.csv").string(), run);

    // pooled stationary-window histogram vs the FP stationary field
    const StationaryCovariance sc = fp_stationary_covariance(co, model);
    const double sq = std::sqrt(sc.s_qq), sth_p = std::sqrt(sc.s_pp);
    std::vector<double> window;
    for (double tk = 0.6 * cfg.t; tk <= cfg.t + 1e-9; tk += std::max(1.0 / gamma, cfg.t / 20.0))
        window.push_back(tk);
    const PhaseSpaceHistogram hist = estimate_f(run, window, 16, 16, -4 * sq, 4 * sq,
                                                -4 * sth_p, 4 * sth_p);
    PhaseSpaceField fp_stat = fill_field(hist.density, [&](double q, double p) {
        const double det = sc.s_qq * sc.s_pp - sc.s_qp * sc.s_qp;
        const double e = (sc.s_pp * q * q - 2 * sc.s_qp * q * p + sc.s_qq * p * p) / det;
        return std::exp(-0.5 * e);
    });
    const double l1 = l1_distance(hist.density, fp_stat);
    write_field_csv((out / "field_histogram.csv").string(), hist.density);
    write_field_csv((out / "field_fp_stationary.csv").string(), fp_stat);
    rep.value("l1_centers_vs_fp", l1);
    rep.check_le("centers_match_fp", "pooled centre histogram matches the FP field",
                 l1, 0.15);

    const FieldMoments fm = field_moments(hist.density);
    rep.value("var_q_centers", fm.var_q);
    rep.value("var_p_centers", fm.var_p);
    rep.check_rel("thermal_var_p", "centre momentum variance near m kT", fm.var_p,
                  model.m * kT, 0.15);
    rep.check_rel("thermal_var_q", "centre position variance near kT/(m w^2)", fm.var_q,
                  kT / (model.m * w2), 0.15);
    return 0;
}

int experiment_histories(const ExperimentConfig& cfg, int, Report& rep,
                         const fs::path& out) {
    const LindbladModel model = cfg.build_model();
    const GridPtr grid = cfg.build_grid();
    if (grid->n > 64) throw ConfigError("histories requires grid.n <= 64");
    const StationaryParams sp = solve_beta(model, 0.0);
    const RateEstimate rates = estimate_rates(sp, model);

    // 3x3 tiling sized to >= 4 Planck cells with balanced packet margins
    const double sx = std::sqrt(sp.sigma_x2), spp = std::sqrt(sp.sigma_p2);
    const double area = 4.0 * 2.0 * M_PI * model.hbar;
    const double dq = std::sqrt(area * sx / spp);
    const double dp = area / dq;
    const auto cells = tile_3x3(dq, dp);

    const double t_slice = cfg.t > 0 ? cfg.t : 5.0 * rates.tau;
    const double dt_m = std::min(cfg.dt, suggest_dt(model, *grid));

    PhaseSpaceField proto = make_field(99, -1.5 * dq - 2, 1.5 * dq + 2, 99,
                                       -1.5 * dp - 2, 1.5 * dp + 2);
    const FPCoefficients co = coefficients(model, sp);
    const double dt_fp = 0.9 * fp_suggest_dt(co, model, proto);

    std::vector<InitialMixtureComponent> mixture = {{0.5, -dq, 0.0}, {0.5, dq, 0.0}};
    const HistoryComparison cmp = history_probabilities_vs_fp(
        model, mixture, sp, grid, cells, t_slice, t_slice, dt_m, proto, dt_fp);

    nlohmann::json probs = nlohmann::json::array();
    for (std::size_t h = 0; h < cmp.p_functional.size(); ++h)
        probs.push_back({cmp.p_functional[h], cmp.p_fp[h]});
    rep.value("epsilon", cmp.epsilon);
    rep.value("completeness_defect", cmp.completeness_defect);
    rep.value("max_abs_diff", cmp.max_abs_diff);
    rep.value("modal_history", double(cmp.modal_history));

    std::vector<std::string> cols = {"history", "p_functional", "p_fp"};
    std::vector<std::vector<double>> rows;
    for (std::size_t h = 0; h < cmp.p_functional.size(); ++h)
        rows.push_back({double(h), cmp.p_functional[h], cmp.p_fp[h]});
    write_series_csv((out / "series.csv").string(), cols, rows);

    rep.check_le("interference_suppressed",
                 "off-diagonal decoherence ratio", cmp.epsilon, 0.1);
    rep.check_le("histories_match_fp",
                 "history probabilities track the FP cell transitions",
                 cmp.max_abs_diff, 0.1);
    rep.check_true("modal_history_classical",
                   "most probable history follows the damped classical orbit",
                   cmp.modal_classical);
    rep.check_le("probability_sum_rule", "diagonal sums to one within the defect",
                 cmp.completeness_defect, 0.1);
    return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, int threads) {
    try {
        fs::create_directories(cfg.output_dir);
        Report rep(cfg.experiment);
        const fs::path out(cfg.output_dir);
        if (cfg.experiment == "stationary") experiment_stationary(cfg, threads, rep, out);
        else if (cfg.experiment == "duality") experiment_duality(cfg, threads, rep, out);
        else if (cfg.experiment == "localization") experiment_localization(cfg, threads, rep, out);
        else if (cfg.experiment == "rates") experiment_rates(cfg, threads, rep, out);
        else if (cfg.experiment == "fokker_planck") experiment_fokker_planck(cfg, threads, rep, out);
        else if (cfg.experiment == "thermalization") experiment_thermalization(cfg, threads, rep, out);
        else if (cfg.experiment == "histories") experiment_histories(cfg, threads, rep, out);
        else throw ConfigError("unknown experiment " + cfg.experiment);

        rep.write_json((fs::path(cfg.output_dir) / "report.json").string(), config_echo(cfg));
        for (const auto& a : rep.assertions())
            std::cout << (a.pass ? "PASS " : "FAIL ") << a.id << ": measured "
                      << a.measured << " vs " << a.expected << " (" << a.comparison
                      << ")\n";
        return rep.all_pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}

std::string list_experiments_text() {
    return
        "stationary      hold an ensemble at the localized fixed point and verify the shape\n"
        "localization    ensemble decay of the dispersion of the localizing operator\n"
        "duality         trajectory-mean density operator against direct master integration\n"
        "rates           localization timescale estimates for the configured model\n"
        "fokker_planck   phase-space relaxation of the centre distribution to equilibrium\n"
        "thermalization  long-time ensemble against the thermal phase-space weight\n"
        "histories       two-time phase-space histories: interference suppression and\n"
        "                classical ordering of the probabilities\n";
}

}  // namespace qsd
