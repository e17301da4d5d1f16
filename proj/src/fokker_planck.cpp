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

#include "qsd/fokker_planck.hpp"

#include <cmath>

namespace qsd {

double PhaseSpaceField::mass() const {
    double s = 0;
    for (double v : values) s += v;
    return s * dq * dp;
}

double PhaseSpaceField::min_value() const {
    double m = values.empty() ? 0.0 : values[0];
    for (double v : values) m = std::min(m, v);
    return m;
}

void PhaseSpaceField::normalize() {
    const double m = mass();
    if (m <= 0) throw Error("cannot normalize a massless field");
    for (double& v : values) v /= m;
}

PhaseSpaceField make_field(std::size_t nq, double q_lo, double q_hi,
                           std::size_t np, double p_lo, double p_hi) {
    if (nq < 2 || np < 2 || !(q_hi > q_lo) || !(p_hi > p_lo))
        throw NonPositiveParameter("phase-space lattice needs nq, np >= 2 and positive extents");
    PhaseSpaceField f;
    f.nq = nq;
    f.np = np;
    f.dq = (q_hi - q_lo) / double(nq);
    f.dp = (p_hi - p_lo) / double(np);
    f.q0 = q_lo + 0.5 * f.dq;
    f.p0 = p_lo + 0.5 * f.dp;
    f.values.assign(nq * np, 0.0);
    return f;
}

PhaseSpaceField fill_field(PhaseSpaceField proto,
                           const std::function<double(double, double)>& f) {
    for (std::size_t iq = 0; iq < proto.nq; ++iq)
        for (std::size_t ip = 0; ip < proto.np; ++ip)
            proto.at(iq, ip) = f(proto.q_center(iq), proto.p_center(ip));
    proto.normalize();
    return proto;
}

double l1_distance(const PhaseSpaceField& a, const PhaseSpaceField& b) {
    if (a.nq != b.nq || a.np != b.np) throw GridMismatch("field lattices differ");
    double s = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        s += std::abs(a.values[i] - b.values[i]);
    return s * a.dq * a.dp;
}

FPCoefficients coefficients(const LindbladModel& model, const StationaryParams& params) {
    const double a = model.a, b = model.b, h = model.hbar;
    const cplx sig_xp(params.r0, 0.5 * h);            // sigma(x,p)
    const cplx sig_px = std::conj(sig_xp);            // sigma(p,x)
    const cplx sig_xL = a * params.sigma_x2 + cplx(0, b) * sig_xp;
    const cplx sig_pL = a * sig_px + cplx(0, b) * params.sigma_p2;
    FPCoefficients c;
    c.d_pp = std::norm(sig_pL);
    c.d_qq = std::norm(sig_xL);
    c.d_pq = 2.0 * (sig_xL * std::conj(sig_pL)).real();
    const double det = c.d_qq * c.d_pp - 0.25 * c.d_pq * c.d_pq;
    if (c.d_pp < 0 || c.d_qq < 0 || det < -1e-10 * (1.0 + c.d_pp * c.d_qq))
        throw NegativeDiffusion("diffusion matrix not PSD; stationary params inconsistent");
    if (model.qbm)
        c.high_t_ratio = c.d_pp / (2.0 * model.qbm->m * model.qbm->gamma * model.qbm->kT);
    return c;
}

double fp_suggest_dt(const FPCoefficients& c, const LindbladModel& model,
                     const PhaseSpaceField& f) {
    double vq_max = 0, vp_max = 0;
    for (std::size_t ip = 0; ip < f.np; ++ip)
        vq_max = std::max(vq_max, std::abs(f.p_center(ip)) / model.m);
    for (std::size_t iq = 0; iq < f.nq; ++iq) {
        const double vprime = model.potential.dV(f.q_center(iq));
        for (std::size_t ip = 0; ip < f.np; ++ip)
            vp_max = std::max(vp_max, std::abs(vprime + model.friction() * f.p_center(ip)));
    }
    double bound = 1e30;
    if (vq_max > 0) bound = std::min(bound, f.dq / vq_max);
    if (vp_max > 0) bound = std::min(bound, f.dp / vp_max);
    const double diff = 2.0 * c.d_qq / (f.dq * f.dq) + 2.0 * c.d_pp / (f.dp * f.dp) +
                        std::abs(c.d_pq) / (f.dq * f.dp);
    if (diff > 0) bound = std::min(bound, 1.0 / diff);
    return 0.4 * bound;
}

namespace {

// One conservative step. Face fluxes: upwind advection + centered diffusion;
// boundary faces carry zero flux.
void fp_step(const FPCoefficients& c, const LindbladModel& model,
             const PhaseSpaceField& f, PhaseSpaceField& out, double dt) {
    const std::size_t nq = f.nq, np = f.np;
    const double dq = f.dq, dp = f.dp;

    auto dfdp_at = [&](std::size_t iq, std::size_t ip) {  // centered, one-sided at edges
        if (ip == 0) return (f.at(iq, 1) - f.at(iq, 0)) / dp;
        if (ip == np - 1) return (f.at(iq, np - 1) - f.at(iq, np - 2)) / dp;
        return (f.at(iq, ip + 1) - f.at(iq, ip - 1)) / (2.0 * dp);
    };
    auto dfdq_at = [&](std::size_t iq, std::size_t ip) {
        if (iq == 0) return (f.at(1, ip) - f.at(0, ip)) / dq;
        if (iq == nq - 1) return (f.at(nq - 1, ip) - f.at(nq - 2, ip)) / dq;
        return (f.at(iq + 1, ip) - f.at(iq - 1, ip)) / (2.0 * dq);
    };

    std::copy(f.values.begin(), f.values.end(), out.values.begin());

    // q-direction faces between (iq, ip) and (iq+1, ip)
    for (std::size_t iq = 0; iq + 1 < nq; ++iq) {
        for (std::size_t ip = 0; ip < np; ++ip) {
            const double u = f.p_center(ip) / model.m;
            const double f_up = u >= 0 ? f.at(iq, ip) : f.at(iq + 1, ip);
            const double grad_q = (f.at(iq + 1, ip) - f.at(iq, ip)) / dq;
            const double grad_p = 0.5 * (dfdp_at(iq, ip) + dfdp_at(iq + 1, ip));
            const double flux = u * f_up - c.d_qq * grad_q - 0.5 * c.d_pq * grad_p;
            out.at(iq, ip) -= dt / dq * flux;
            out.at(iq + 1, ip) += dt / dq * flux;
        }
    }
    // p-direction faces between (iq, ip) and (iq, ip+1)
    for (std::size_t iq = 0; iq < nq; ++iq) {
        const double vprime = model.potential.dV(f.q_center(iq));
        for (std::size_t ip = 0; ip + 1 < np; ++ip) {
            const double p_face = f.p_center(ip) + 0.5 * dp;
            const double u = -(vprime + model.friction() * p_face);
            const double f_up = u >= 0 ? f.at(iq, ip) : f.at(iq, ip + 1);
            const double grad_p = (f.at(iq, ip + 1) - f.at(iq, ip)) / dp;
            const double grad_q = 0.5 * (dfdq_at(iq, ip) + dfdq_at(iq, ip + 1));
            const double flux = u * f_up - c.d_pp * grad_p - 0.5 * c.d_pq * grad_q;
            out.at(iq, ip) -= dt / dp * flux;
            out.at(iq, ip + 1) += dt / dp * flux;
        }
    }
}

}  // namespace

PhaseSpaceField evolve_fp(const FPCoefficients& coeffs, const LindbladModel& model,
                          const PhaseSpaceField& f0, double t, double dt) {
    if (t < 0) throw NonPositiveParameter("t must be >= 0");
    const double dt_max = fp_suggest_dt(coeffs, model, f0);
    if (dt > dt_max)
        throw CFLViolation("dt = " + std::to_string(dt) + " exceeds stable bound " +
                           std::to_string(dt_max));
    PhaseSpaceField f = f0, tmp = f0;
    const double m0 = f.mass();
    double remaining = t;
    while (remaining > 1e-15 * (t + 1.0)) {
        const double h = std::min(dt, remaining);
        fp_step(coeffs, model, f, tmp, h);
        std::swap(f.values, tmp.values);
        remaining -= h;
    }
    const double drift = std::abs(f.mass() - m0);
    if (drift > 1e-8 * std::max(1.0, std::abs(m0)))
        throw StabilityViolation("finite-volume mass drift " + std::to_string(drift));
    return f;
}

PhaseSpaceField fp_propagator(const FPCoefficients& coeffs, const LindbladModel& model,
                              const PhaseSpaceField& proto, double q, double p,
                              double t, double dt) {
    PhaseSpaceField f = proto;
    std::fill(f.values.begin(), f.values.end(), 0.0);
    const long iq = std::lround((q - f.q0) / f.dq);
    const long ip = std::lround((p - f.p0) / f.dp);
    if (iq < 1 || ip < 1 || iq >= long(f.nq) - 1 || ip >= long(f.np) - 1)
        throw NonPositiveParameter("impulse must sit in the lattice interior");
    f.at(std::size_t(iq), std::size_t(ip)) = 1.0 / (f.dq * f.dp);
    return evolve_fp(coeffs, model, f, t, dt);
}

PhaseSpaceField maxwell_boltzmann_field(const LindbladModel& model, double kT,
                                        PhaseSpaceField proto) {
    if (!(kT > 0)) throw NonPositiveParameter("kT must be positive");
    return fill_field(std::move(proto), [&](double q, double p) {
        return std::exp(-p * p / (2.0 * model.m * kT) - model.potential.V(q) / kT);
    });
}

StationaryCovariance fp_stationary_covariance(const FPCoefficients& c,
                                              const LindbladModel& model) {
    if (model.potential.tag() != Potential::Tag::harmonic)
        throw Error("stationary covariance is defined for the harmonic flow");
    const double w2 = model.potential.d2V(0.0) / model.m;  // omega^2
    const double g2 = model.friction();                    // 2 hbar a b
    StationaryCovariance s;
    // A = [[0, 1/m], [-m w^2, -g2]]; from A S + S A^T + Q = 0:
    s.s_qp = -model.m * c.d_qq;
    s.s_pp = (c.d_pp + model.m * model.m * w2 * c.d_qq) / g2;
    s.s_qq = (s.s_pp / model.m + model.m * g2 * c.d_qq + c.d_pq) / (model.m * w2);
    return s;
}

FieldMoments field_moments(const PhaseSpaceField& f) {
    FieldMoments m;
    double w = 0;
    for (std::size_t iq = 0; iq < f.nq; ++iq)
        for (std::size_t ip = 0; ip < f.np; ++ip) {
            const double v = f.at(iq, ip);
            w += v;
            m.q_mean += v * f.q_center(iq);
            m.p_mean += v * f.p_center(ip);
        }
    m.q_mean /= w;
    m.p_mean /= w;
    for (std::size_t iq = 0; iq < f.nq; ++iq)
        for (std::size_t ip = 0; ip < f.np; ++ip) {
            const double v = f.at(iq, ip) / w;
            const double dq = f.q_center(iq) - m.q_mean;
            const double dp = f.p_center(ip) - m.p_mean;
            m.var_q += v * dq * dq;
            m.var_p += v * dp * dp;
            m.cov_qp += v * dq * dp;
        }
    return m;
}

}  // namespace qsd
