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

#include "qsd/gaussian.hpp"

#include <cmath>

namespace qsd {

namespace {

// residuals of the three fixed-point conditions at (sx2, sp2, r0)
void fixed_point_residuals(const LindbladModel& mod, double vpp, double sx2,
                           double sp2, double r0, double& rx, double& rp, double& rr) {
    const double h = mod.hbar, a = mod.a, b = mod.b, m = mod.m;
    const double h24 = 0.25 * h * h;
    rx = r0 / m + h * a * b * sx2 + b * b * (h24 - r0 * r0) - a * a * sx2 * sx2;
    rp = -vpp * r0 - h * a * b * sp2 + a * a * (h24 - r0 * r0) - b * b * sp2 * sp2;
    rr = -sx2 * vpp + sp2 / m - 2 * a * a * r0 * sx2 - 2 * b * b * r0 * sp2;
}

StationaryParams from_beta(const LindbladModel& mod, cplx beta, double x_bar) {
    StationaryParams sp;
    sp.beta = beta;
    sp.valid_at = x_bar;
    const double h = mod.hbar;
    sp.sigma_x2 = 1.0 / (4.0 * beta.real());
    sp.r0 = -h * beta.imag() / (2.0 * beta.real());
    sp.sigma_p2 = (0.25 * h * h + sp.r0 * sp.r0) / sp.sigma_x2;
    fixed_point_residuals(mod, mod.potential.d2V(x_bar), sp.sigma_x2, sp.sigma_p2,
                          sp.r0, sp.residual_var_x, sp.residual_var_p, sp.residual_r);
    return sp;
}

}  // namespace

StationaryParams solve_beta(const LindbladModel& model, double x_bar) {
    const double a = model.a, b = model.b, h = model.hbar, m = model.m;
    if (a == 0.0 && b == 0.0)
        throw NoStableRoot("a = b = 0 has no localizing fixed point");
    const double vpp = model.potential.d2V(x_bar);
    // quadratic A beta^2 + B beta + C = 0
    const cplx A = 4.0 * h * h * cplx(b * b, 1.0 / (m * h));
    const cplx B = 4.0 * h * a * b;
    const cplx C = -cplx(a * a, vpp / h);
    const cplx disc = std::sqrt(B * B - 4.0 * A * C);
    const cplx r1 = (-B + disc) / (2.0 * A);
    const cplx r2 = (-B - disc) / (2.0 * A);

    const bool ok1 = r1.real() > 0, ok2 = r2.real() > 0;
    if (!ok1 && !ok2)
        throw NoStableRoot("no normalizable root: beta1 = (" + std::to_string(r1.real()) +
                           "," + std::to_string(r1.imag()) + "), beta2 = (" +
                           std::to_string(r2.real()) + "," + std::to_string(r2.imag()) + ")");
    if (ok1 != ok2) return from_beta(model, ok1 ? r1 : r2, x_bar);

    // both normalizable: keep the one with the smaller fixed-point residual
    StationaryParams s1 = from_beta(model, r1, x_bar);
    StationaryParams s2 = from_beta(model, r2, x_bar);
    auto res = [](const StationaryParams& s) {
        return std::abs(s.residual_var_x) + std::abs(s.residual_var_p) + std::abs(s.residual_r);
    };
    StationaryParams best = res(s1) <= res(s2) ? s1 : s2;
    best.ambiguous_root = true;
    return best;
}

WaveFunction coherent_state(const GridPtr& grid, const StationaryParams& params,
                            double q, double p, double hbar) {
    if (grid->hbar != hbar) throw GridMismatch("grid hbar differs from requested hbar");
    return gaussian_packet(grid, params.beta, q, p);
}

double coherent_overlap2(const StationaryParams& params, double hbar,
                         double q1, double p1, double q2, double p2) {
    // |<psi1|psi2>|^2 = exp(-dq^2/(4 sx2) - sx2 (dp - 2 r0 dq ... )/hbar^2 ...):
    // evaluate via the Gaussian integral with beta shared by both states.
    const cplx beta = params.beta;
    const double br = beta.real();
    const double dq = q2 - q1, dp = p2 - p1;
    // overlap = sqrt(2 br/pi) Int exp(-conj(beta)(x-q1)^2 - beta(x-q2)^2 + i dp x/hbar) dx
    const cplx bsum = std::conj(beta) + beta;  // 2 br
    const cplx lin = 2.0 * (std::conj(beta) * q1 + beta * q2) + cplx(0, dp / hbar);
    const cplx con = -std::conj(beta) * q1 * q1 - beta * q2 * q2;
    // Int exp(-bsum x^2 + lin x + con) = sqrt(pi/bsum) exp(lin^2/(4 bsum) + con)
    const cplx logI = 0.5 * (std::log(M_PI) - std::log(bsum)) + lin * lin / (4.0 * bsum) + con;
    const double log_norm = 0.5 * std::log(2.0 * br / M_PI);
    return std::exp(2.0 * (log_norm + logI.real()));
}

MomentState reduced_moment_flow(const LindbladModel& model, const MomentState& s) {
    const double a = model.a, b = model.b, h = model.hbar, m = model.m;
    const double vpp = model.potential.d2V(s.x_mean);
    const double h24 = 0.25 * h * h;
    MomentState d;
    d.x_mean = s.p_mean / m;
    d.p_mean = -model.potential.dV(s.x_mean) - 2.0 * h * a * b * s.p_mean;
    d.var_x = 2.0 * s.r / m + 2.0 * h * a * b * s.var_x +
              2.0 * b * b * (h24 - s.r * s.r) - 2.0 * a * a * s.var_x * s.var_x;
    d.var_p = -2.0 * s.r * vpp - 2.0 * h * a * b * s.var_p +
              2.0 * a * a * (h24 - s.r * s.r) - 2.0 * b * b * s.var_p * s.var_p;
    d.r = -s.var_x * vpp + s.var_p / m - 2.0 * a * a * s.r * s.var_x -
          2.0 * b * b * s.r * s.var_p;
    return d;
}

VarianceDrift variance_drift_exact(const LindbladModel& model, const WaveFunction& psi) {
    const double a = model.a, b = model.b, h = model.hbar, m = model.m;
    const double h24 = 0.25 * h * h;
    const MomentState s = moments(psi);
    const Potential& pot = model.potential;
    const double cov_pVp = expectation(psi, Obs::pVp_sym, pot).real() -
                           s.p_mean * expectation(psi, Obs::Vp, pot).real();
    const double cov_xVp = expectation(psi, Obs::xVp, pot).real() -
                           s.x_mean * expectation(psi, Obs::Vp, pot).real();
    VarianceDrift d;
    d.d_var_x = 2.0 * s.r / m + 2.0 * h * a * b * s.var_x +
                2.0 * b * b * (h24 - s.r * s.r) - 2.0 * a * a * s.var_x * s.var_x;
    d.d_var_p = -2.0 * cov_pVp - 2.0 * h * a * b * s.var_p +
                2.0 * a * a * (h24 - s.r * s.r) - 2.0 * b * b * s.var_p * s.var_p;
    d.d_r = -cov_xVp + s.var_p / m - 2.0 * a * a * s.r * s.var_x -
            2.0 * b * b * s.r * s.var_p;
    return d;
}

}  // namespace qsd
