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

#include "qsd/trajectory.hpp"

#include <cmath>

#include "qsd/fft.hpp"
#include "qsd/localization.hpp"

namespace qsd {
namespace {

// Scratch buffers reused across steps of one trajectory.
struct Workspace {
    std::vector<cplx> hat, ppsi, p2psi, out;
    void resize(std::size_t n) {
        hat.resize(n);
        ppsi.resize(n);
        p2psi.resize(n);
        out.resize(n);
    }
};

double norm2_raw(const std::vector<cplx>& a, double dx) {
    double s = 0;
    for (const cplx& c : a) s += std::norm(c);
    return s * dx;
}

// One step on raw amplitudes; psi is overwritten. Returns pre-normalization norm.
double step_in_place(const LindbladModel& mod, cplx ca, cplx cb, const Grid& g,
                     std::vector<cplx>& psi, double dt, cplx dxi, Scheme scheme,
                     Workspace& w) {
    const std::size_t n = g.n;
    const double h = g.hbar;
    w.resize(n);

    if (scheme == Scheme::split) {
        // exact H0 step: exp(-i V dt/2hbar) F^-1 exp(-i hbar k^2 dt/2m) F exp(-i V dt/2hbar)
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = -0.5 * mod.potential.V(g.x[j]) * dt / h;
            psi[j] *= cplx(std::cos(phase), std::sin(phase));
        }
        fft(psi.data(), n);
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = -0.5 * h * g.k[j] * g.k[j] * dt / mod.m;
            psi[j] *= cplx(std::cos(phase), std::sin(phase));
        }
        ifft(psi.data(), n);
        for (std::size_t j = 0; j < n; ++j) {
            const double phase = -0.5 * mod.potential.V(g.x[j]) * dt / h;
            psi[j] *= cplx(std::cos(phase), std::sin(phase));
        }
    }

    // spectral p psi and p^2 psi
    w.hat = psi;
    fft(w.hat.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
        const double pk = h * g.k[j];
        w.ppsi[j] = w.hat[j] * pk;
        w.p2psi[j] = w.hat[j] * (pk * pk);
    }
    ifft(w.ppsi.data(), n);
    ifft(w.p2psi.data(), n);

    // expectations on the incoming state
    double xm = 0, nn = 0;
    cplx pm_c(0, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const double wgt = std::norm(psi[j]);
        nn += wgt;
        xm += wgt * g.x[j];
        pm_c += std::conj(psi[j]) * w.ppsi[j];
    }
    const double dx = g.dx;
    nn *= dx;
    xm *= dx / nn;
    const double pm = pm_c.real() * dx / nn;
    const cplx eL = ca * xm + cb * pm;
    const cplx eLc = std::conj(eL);
    const cplx z = std::conj(ca) * cb;  // L^dag L cross-term weight

    const cplx iu(0, 1);
    const double cres = mod.c;  // c {x,p} stays in the drift (H0 handled above)
    for (std::size_t j = 0; j < n; ++j) {
        const double x = g.x[j];
        const cplx Lpsi = ca * x * psi[j] + cb * w.ppsi[j];
        const cplx xp_psi = x * w.ppsi[j];  // x p psi
        // L^dag L psi = |ca|^2 x^2 psi + |cb|^2 p^2 psi + Re(z)(2 x p - i hbar) psi - hbar Im(z) psi
        const cplx LdL = std::norm(ca) * x * x * psi[j] + std::norm(cb) * w.p2psi[j] +
                         z.real() * (2.0 * xp_psi - iu * h * psi[j]) -
                         h * z.imag() * psi[j];
        cplx drift = eLc * Lpsi - 0.5 * LdL - 0.5 * eLc * eL * psi[j];
        // Hamiltonian pieces not covered by the split unitary
        drift -= iu / h * cres * (2.0 * xp_psi - iu * h * psi[j]);
        if (scheme == Scheme::euler)
            drift -= iu / h * (0.5 * w.p2psi[j] / mod.m + mod.potential.V(x) * psi[j]);
        const cplx noise = (Lpsi - eL * psi[j]) * dxi;
        w.out[j] = psi[j] + drift * dt + noise;
    }

    const double pre = std::sqrt(norm2_raw(w.out, dx));
    if (pre < 1e-6)
        throw NormCollapse("pre-normalization norm " + std::to_string(pre) +
                           "; step too large");
    const double s = 1.0 / pre;
    for (std::size_t j = 0; j < n; ++j) psi[j] = w.out[j] * s;
    return pre;
}

}  // namespace

WaveFunction ito_step_general(const LindbladModel& model, cplx ca, cplx cb,
                              const WaveFunction& psi, double dt, cplx dxi,
                              Scheme scheme, StepStats* stats) {
    if (!(dt > 0)) throw NonPositiveParameter("dt must be positive");
    if (psi.grid->hbar != model.hbar) throw GridMismatch("grid hbar differs from model hbar");
    WaveFunction out = psi;
    Workspace w;
    const double pre = step_in_place(model, ca, cb, *psi.grid, out.amp, dt, dxi, scheme, w);
    if (stats) stats->prenorm = pre;
    return out;
}

WaveFunction ito_step(const LindbladModel& model, const WaveFunction& psi,
                      double dt, cplx dxi, Scheme scheme, StepStats* stats) {
    return ito_step_general(model, model.a, cplx(0, model.b), psi, dt, dxi, scheme, stats);
}

TrajectoryRecord run_trajectory(const LindbladModel& model, const WaveFunction& psi0,
                                double t, double dt, NoiseProcess noise,
                                std::size_t record_every, const TrajectoryOptions& opts) {
    if (t < 0) throw NonPositiveParameter("t must be >= 0");
    if (record_every == 0) record_every = 1;
    const int wrap_before = warnings::count(warnings::Kind::wrap);

    TrajectoryRecord rec;
    WaveFunction psi = psi0;
    Workspace w;
    const cplx ca = model.a, cb = cplx(0, model.b);

    auto record = [&](double time) {
        rec.times.push_back(time);
        rec.moments.push_back(moments(psi));
        if (opts.params)
            rec.delta_A2.push_back(
                delta_A2_from_moments(rec.moments.back(), *opts.params, model.hbar));
    };
    auto want_snapshot = [&](double t0, double t1) {
        for (double ts : opts.snapshot_at)
            if (ts > t0 && ts <= t1 + 1e-12) return true;
        return false;
    };

    record(0.0);
    if (want_snapshot(-1.0, 0.0) ||
        (!opts.snapshot_at.empty() && opts.snapshot_at.front() == 0.0)) {
        rec.snapshots.push_back(psi);
        rec.snapshot_times.push_back(0.0);
    }

    const std::size_t nsteps = (t > 0) ? std::size_t(std::ceil(t / dt - 1e-9)) : 0;
    double time = 0;
    for (std::size_t s = 0; s < nsteps; ++s) {
        const double h = std::min(dt, t - time);
        const cplx dxi = noise.increment(h);
        step_in_place(model, ca, cb, *psi.grid, psi.amp, h, dxi, opts.scheme, w);
        const double tnew = time + h;
        if ((s + 1) % record_every == 0 || s + 1 == nsteps) record(tnew);
        if (want_snapshot(time, tnew)) {
            rec.snapshots.push_back(psi);
            rec.snapshot_times.push_back(tnew);
        }
        time = tnew;
    }
    rec.final_state = psi;
    rec.wrap_warnings = warnings::count(warnings::Kind::wrap) - wrap_before;
    return rec;
}

DriftCheck moment_drift_check(const LindbladModel& model, const WaveFunction& psi,
                              std::size_t n_samples, double dt, std::uint64_t seed) {
    const WaveFunction psin = normalize(psi);
    const MomentState base = moments(psin);
    const VarianceDrift vd = variance_drift_exact(model, psin);
    const double dxm = base.p_mean / model.m;
    const double dpm = -expectation(psin, Obs::Vp, model.potential).real() -
                       2.0 * model.hbar * model.a * model.b * base.p_mean;

    NoiseProcess noise(seed);
    Workspace w;
    const cplx ca = model.a, cb = cplx(0, model.b);
    double s1[5] = {0, 0, 0, 0, 0}, s2[5] = {0, 0, 0, 0, 0};
    std::vector<cplx> buf;
    for (std::size_t i = 0; i < n_samples; ++i) {
        buf = psin.amp;
        const cplx dxi = noise.increment(dt);
        step_in_place(model, ca, cb, *psin.grid, buf, dt, dxi, Scheme::euler, w);
        const MomentState m = moments({psin.grid, buf});
        const double d[5] = {m.x_mean - base.x_mean, m.p_mean - base.p_mean,
                             m.var_x - base.var_x, m.var_p - base.var_p, m.r - base.r};
        for (int q = 0; q < 5; ++q) {
            s1[q] += d[q];
            s2[q] += d[q] * d[q];
        }
    }
    const double inv = 1.0 / double(n_samples);
    auto entry = [&](int q, double analytic) {
        DriftCheck::Entry e;
        const double mean = s1[q] * inv;
        const double var = std::max(0.0, s2[q] * inv - mean * mean);
        const double se = std::sqrt(var * inv);
        e.measured = mean / dt;
        e.analytic = analytic;
        e.stderr_ = se / dt;
        e.z = (se > 0) ? (mean - analytic * dt) / se : 0.0;
        return e;
    };
    DriftCheck r;
    r.x_mean = entry(0, dxm);
    r.p_mean = entry(1, dpm);
    r.var_x = entry(2, vd.d_var_x);
    r.var_p = entry(3, vd.d_var_p);
    r.r = entry(4, vd.d_r);
    return r;
}

double suggest_traj_dt(const LindbladModel& model, const Grid& grid,
                       const StationaryParams& params) {
    const double e_max = M_PI * M_PI * grid.hbar * grid.hbar /
                         (2.0 * model.m * grid.dx * grid.dx);
    const double tau = 1.0 / (2.0 * model.a * model.a * params.sigma_x2 +
                              2.0 * model.b * model.b * params.sigma_p2);
    return std::min(0.05 * grid.hbar / e_max, 0.05 * tau);
}

}  // namespace qsd
