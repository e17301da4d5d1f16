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

#include "qsd/ensemble.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace qsd {

EnsembleRun run_ensemble(const EnsembleSpec& spec) {
    if (spec.n_traj < 1) throw NonPositiveParameter("ensemble needs n_traj >= 1");
    EnsembleRun run;
    run.spec = spec;
    run.records.resize(spec.n_traj);

    unsigned nthreads = spec.threads > 0 ? unsigned(spec.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, unsigned(spec.n_traj));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex err_mtx;

    auto worker = [&]() {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= spec.n_traj || failed.load()) break;
            try {
                run.records[j] = run_trajectory(spec.model, spec.psi0, spec.t, spec.dt,
                                                NoiseProcess(spec.base_seed + j),
                                                spec.record_every, spec.traj);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!failed.exchange(true))
                    first_error = "trajectory seed " + std::to_string(spec.base_seed + j) +
                                  " failed: " + e.what();
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw Error(first_error);
    return run;
}

std::size_t EnsembleRun::time_index(double t) const {
    const auto& ts = records.front().times;
    std::size_t best = 0;
    double d_best = 1e300;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double d = std::abs(ts[i] - t);
        if (d < d_best) {
            d_best = d;
            best = i;
        }
    }
    const double tol = 0.5 * spec.dt * double(std::max<std::size_t>(1, spec.record_every));
    if (d_best > tol + 1e-12)
        throw NonPositiveParameter("requested time " + std::to_string(t) +
                                   " is not on the record lattice");
    return best;
}

std::vector<double> EnsembleRun::mean_delta_A2() const {
    std::vector<double> m(records.front().delta_A2.size(), 0.0);
    for (const auto& r : records)
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += r.delta_A2[k];
    for (double& v : m) v /= double(records.size());
    return m;
}

std::vector<MomentState> EnsembleRun::mean_moments() const {
    std::vector<MomentState> m(records.front().moments.size());
    for (const auto& r : records)
        for (std::size_t k = 0; k < m.size(); ++k) {
            m[k].x_mean += r.moments[k].x_mean;
            m[k].p_mean += r.moments[k].p_mean;
            m[k].var_x += r.moments[k].var_x;
            m[k].var_p += r.moments[k].var_p;
            m[k].r += r.moments[k].r;
        }
    const double inv = 1.0 / double(records.size());
    for (auto& s : m) {
        s.x_mean *= inv;
        s.p_mean *= inv;
        s.var_x *= inv;
        s.var_p *= inv;
        s.r *= inv;
    }
    return m;
}

DensityMatrix reconstruct_rho(const EnsembleRun& run, double at_time) {
    const GridPtr grid = run.spec.psi0.grid;
    DensityMatrix rho = DensityMatrix::zero(grid);
    const long n = long(grid->n);
    bool found_any = false;
    for (const auto& rec : run.records) {
        const WaveFunction* snap = nullptr;
        for (std::size_t s = 0; s < rec.snapshot_times.size(); ++s)
            if (std::abs(rec.snapshot_times[s] - at_time) <= run.spec.dt + 1e-12)
                snap = &rec.snapshots[s];
        if (!snap && std::abs(run.spec.t - at_time) <= run.spec.dt + 1e-12)
            snap = &rec.final_state;
        if (!snap)
            throw NonPositiveParameter("no stored state at t = " + std::to_string(at_time) +
                                       "; add it to snapshot_at");
        Eigen::Map<const Eigen::VectorXcd> v(snap->amp.data(), n);
        rho.mat.noalias() += v * v.adjoint();
        found_any = true;
    }
    if (!found_any) throw Error("empty ensemble");
    rho.mat /= double(run.records.size());
    return rho;
}

namespace {

PhaseSpaceHistogram histogram_centers(const EnsembleRun& run,
                                      const std::vector<std::size_t>& idx,
                                      std::size_t bq, std::size_t bp, double q_lo,
                                      double q_hi, double p_lo, double p_hi) {
    PhaseSpaceHistogram h;
    h.density = make_field(bq, q_lo, q_hi, bp, p_lo, p_hi);
    for (const auto& rec : run.records) {
        for (std::size_t k : idx) {
            const MomentState& m = rec.moments[k];
            ++h.n_samples;
            const double fq = (m.x_mean - q_lo) / (q_hi - q_lo);
            const double fp = (m.p_mean - p_lo) / (p_hi - p_lo);
            if (fq < 0 || fq >= 1 || fp < 0 || fp >= 1) {
                ++h.n_outside;
                continue;
            }
            const std::size_t iq = std::size_t(fq * double(bq));
            const std::size_t ip = std::size_t(fp * double(bp));
            h.density.at(iq, ip) += 1.0;
        }
    }
    if (h.n_samples == h.n_outside) throw Error("all samples left the histogram window");
    h.density.normalize();
    return h;
}

}  // namespace

PhaseSpaceHistogram estimate_f(const EnsembleRun& run, double at_time, std::size_t bq,
                               std::size_t bp, double q_lo, double q_hi, double p_lo,
                               double p_hi, std::optional<double> tau) {
    return estimate_f(run, std::vector<double>{at_time}, bq, bp, q_lo, q_hi, p_lo, p_hi, tau);
}

PhaseSpaceHistogram estimate_f(const EnsembleRun& run, const std::vector<double>& at_times,
                               std::size_t bq, std::size_t bp, double q_lo, double q_hi,
                               double p_lo, double p_hi, std::optional<double> tau) {
    std::vector<std::size_t> idx;
    for (double t : at_times) {
        idx.push_back(run.time_index(t));
        if (tau && t < 3.0 * *tau)
            warnings::raise(warnings::Kind::scope,
                            "centre histogram requested before 3 tau; packets may not "
                            "be localized yet");
    }
    return histogram_centers(run, idx, bq, bp, q_lo, q_hi, p_lo, p_hi);
}

DiagonalityReport coherent_diagonality(const DensityMatrix& rho,
                                       const StationaryParams& params,
                                       const std::vector<std::array<double, 4>>& pairs) {
    DiagonalityReport rep;
    const double hbar = rho.grid->hbar;
    const double sx = std::sqrt(params.sigma_x2);
    const double sp = std::sqrt(params.sigma_p2);
    for (const auto& pr : pairs) {
        DiagonalityEntry e{pr[0], pr[1], pr[2], pr[3], 0.0, false, false};
        const WaveFunction f1 = coherent_state(rho.grid, params, e.q1, e.p1, hbar);
        const WaveFunction f2 = coherent_state(rho.grid, params, e.q2, e.p2, hbar);
        const double d1 = matrix_element(f1, rho, f1).real();
        const double d2 = matrix_element(f2, rho, f2).real();
        if (d1 < 1e-12 || d2 < 1e-12) {
            e.degenerate = true;
        } else {
            e.r = std::abs(matrix_element(f1, rho, f2)) / std::sqrt(d1 * d2);
        }
        e.separated = std::abs(e.q2 - e.q1) >= 10.0 * sx || std::abs(e.p2 - e.p1) >= 10.0 * sp;
        if (e.separated && !e.degenerate)
            rep.max_r_separated = std::max(rep.max_r_separated, e.r);
        rep.entries.push_back(e);
    }
    return rep;
}

PhaseSpaceField husimi(const DensityMatrix& rho, const StationaryParams& params,
                       PhaseSpaceField proto) {
    const double hbar = rho.grid->hbar;
    const long n = long(rho.grid->n);
    Eigen::VectorXcd amp(n);
    for (std::size_t iq = 0; iq < proto.nq; ++iq) {
        for (std::size_t ip = 0; ip < proto.np; ++ip) {
            const WaveFunction probe = coherent_state(rho.grid, params,
                                                      proto.q_center(iq),
                                                      proto.p_center(ip), hbar);
            Eigen::Map<const Eigen::VectorXcd> v(probe.amp.data(), n);
            const double dx = rho.grid->dx;
            const double q = ((v.adjoint() * rho.mat * v)(0) * dx * dx).real();
            proto.at(iq, ip) = q / (2.0 * M_PI * hbar);
        }
    }
    if (proto.min_value() < -1e-12)
        warnings::raise(warnings::Kind::scope, "husimi picked up negative weight");
    proto.normalize();
    return proto;
}

}  // namespace qsd
