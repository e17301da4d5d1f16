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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsd/localization.hpp"
#include "test_util.hpp"

using namespace qsd;
using test::default_grid;

namespace {

// the matrix of models the invariants run over
std::vector<LindbladModel> model_matrix() {
    std::vector<LindbladModel> mods;
    mods.push_back(standard(1, 0, 1, 1, Potential::free_particle()));
    for (double w : {0.5, 1.0, 2.0})
        mods.push_back(standard(1, 0, 1, 1, Potential::harmonic(w)));
    mods.push_back(standard(1, 0, 1, 1, Potential::inverted_harmonic(1.0)));
    mods.push_back(from_qbm(QBMParams{0.5, 2.0, 1.0, 1.0}, Potential::harmonic(1.0)));
    mods.push_back(standard(1.0, 0.2, 1.0, 1.0, Potential::harmonic(1.0)));
    return mods;
}

}  // namespace

TEST_CASE("free-particle closed form") {
    const LindbladModel mod = test::free_particle_unit();
    const StationaryParams sp = solve_beta(mod, 0.0);
    const double s8 = std::sqrt(1.0 / 8.0);
    CHECK(sp.beta.real() == doctest::Approx(s8).epsilon(1e-12));
    CHECK(sp.beta.imag() == doctest::Approx(-s8).epsilon(1e-12));
    CHECK(sp.sigma_x2 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(sp.sigma_p2 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(sp.r0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::sqrt(sp.sigma_p2 * sp.sigma_x2) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("fixed-point structure across the model matrix") {
    for (const auto& mod : model_matrix()) {
        const StationaryParams sp = solve_beta(mod, 0.0);
        CAPTURE(mod.potential.name());
        CHECK(sp.beta.real() > 0);
        // uncertainty identity
        CHECK(sp.sigma_x2 * sp.sigma_p2 - sp.r0 * sp.r0 ==
              doctest::Approx(0.25 * mod.hbar * mod.hbar).epsilon(1e-10));
        // beta reconstruction from the moments
        const cplx beta_rec = (1.0 - cplx(0, 2.0) * sp.r0 / mod.hbar) / (4.0 * sp.sigma_x2);
        CHECK(std::abs(beta_rec - sp.beta) < 1e-10);
        // flow residuals
        CHECK(std::abs(sp.residual_var_x) < 1e-8);
        CHECK(std::abs(sp.residual_var_p) < 1e-8);
        CHECK(std::abs(sp.residual_r) < 1e-8);
        // reduced flow vanishes there
        MomentState s{sp.valid_at, 0.0, sp.sigma_x2, sp.sigma_p2, sp.r0};
        const MomentState d = reduced_moment_flow(mod, s);
        CHECK(std::abs(d.var_x) < 1e-10);
        CHECK(std::abs(d.var_p) < 1e-10);
        CHECK(std::abs(d.r) < 1e-10);
        // coefficient identities
        const LyapunovCoefficients c = lyapunov_coefficients(sp, mod);
        CHECK(c.c1_closed < 0);
        CHECK(c.c1_def == doctest::Approx(c.c1_closed).epsilon(1e-10));
        CHECK(c.c2_def == doctest::Approx(c.c1_closed).epsilon(1e-10));
        CHECK(c.c3_def == doctest::Approx(c.c3_closed).epsilon(1e-10));
    }
}

TEST_CASE("inverted oscillator still localizes") {
    const LindbladModel mod = standard(1, 0, 1, 1, Potential::inverted_harmonic(1.0));
    const StationaryParams sp = solve_beta(mod, 0.0);
    CHECK(sp.beta.real() > 0);
    CHECK(sp.sigma_x2 > 0);
    CHECK(sp.sigma_p2 > 0);
}

TEST_CASE("no fixed point without coupling") {
    CHECK_THROWS_AS(solve_beta(standard(0, 0, 1, 1, Potential::free_particle()), 0.0),
                    NoStableRoot);
}

TEST_CASE("coherent state realizes the solved moments on the grid") {
    auto g = default_grid();
    for (const auto& mod : model_matrix()) {
        const StationaryParams sp = solve_beta(mod, 0.0);
        const double q = 1.2, p = -0.7;
        const WaveFunction psi = coherent_state(g, sp, q, p, mod.hbar);
        const MomentState m = moments(psi);
        CHECK(m.x_mean == doctest::Approx(q).epsilon(1e-6));
        CHECK(m.p_mean == doctest::Approx(p).epsilon(1e-6));
        CHECK(m.var_x == doctest::Approx(sp.sigma_x2).epsilon(1e-6));
        CHECK(m.var_p == doctest::Approx(sp.sigma_p2).epsilon(1e-6));
        CHECK(m.r == doctest::Approx(sp.r0).epsilon(1e-6));
    }
}

TEST_CASE("real beta gives an uncorrelated packet") {
    auto g = default_grid();
    WaveFunction psi = gaussian_packet(g, cplx(0.4, 0.0), 0.0, 0.5);
    CHECK(std::abs(moments(psi).r) < 1e-8);
}

TEST_CASE("coherent overlap decays as the analytic gaussian") {
    auto g = default_grid(256, 24.0);
    const LindbladModel mod = test::free_particle_unit();
    const StationaryParams sp = solve_beta(mod, 0.0);
    const double sx = std::sqrt(sp.sigma_x2);
    for (double dq : {0.5, 2.0, 5.0}) {
        const WaveFunction a = coherent_state(g, sp, -0.5 * dq, 0.3, mod.hbar);
        const WaveFunction b = coherent_state(g, sp, 0.5 * dq, 0.3, mod.hbar);
        const double grid_ov = std::norm(inner(a, b));
        const double analytic = coherent_overlap2(sp, mod.hbar, -0.5 * dq, 0.3, 0.5 * dq, 0.3);
        CHECK(grid_ov == doctest::Approx(analytic).epsilon(1e-6));
    }
    // approximate orthogonality at 10 sigma
    CHECK(coherent_overlap2(sp, 1.0, 0.0, 0.0, 10.0 * sx, 0.0) < 1e-4);
}

TEST_CASE("closed-system reduced flow reproduces free spreading") {
    const LindbladModel mod = standard(0, 0, 1, 1, Potential::free_particle());
    MomentState s{0.0, 0.0, 1.7, 0.9, 0.3};
    const MomentState d = reduced_moment_flow(mod, s);
    CHECK(d.var_x == doctest::Approx(2.0 * s.r / mod.m));
    CHECK(d.var_p == doctest::Approx(0.0));
    CHECK(d.r == doctest::Approx(s.var_p / mod.m));
}

TEST_CASE("reduced flow matches the exact-grid drift for quadratic potentials") {
    auto g = default_grid();
    const LindbladModel mod = standard(0.8, 0.1, 1.0, 1.0, Potential::harmonic(1.3));
    const StationaryParams sp = solve_beta(mod, 0.0);
    const WaveFunction psi = coherent_state(g, sp, 0.8, -0.4, mod.hbar);
    const MomentState m = moments(psi);
    const MomentState d_red = reduced_moment_flow(mod, m);
    const VarianceDrift d_ex = variance_drift_exact(mod, psi);
    CHECK(d_red.var_x == doctest::Approx(d_ex.d_var_x).epsilon(1e-6));
    CHECK(d_red.var_p == doctest::Approx(d_ex.d_var_p).epsilon(2e-5));
    CHECK(d_red.r == doctest::Approx(d_ex.d_r).epsilon(2e-5));
}

TEST_CASE("deviation coordinates reproduce the drift formula linear term") {
    // inserting scaled deviations reproduces the regrouped drift:
    // cross-check between the reduced flow and the localization module
    const LindbladModel mod = test::free_particle_unit();
    const StationaryParams sp = solve_beta(mod, 0.0);
    NoiseProcess rng(3);
    for (int i = 0; i < 100; ++i) {
        const DeviationCoords dev = sample_admissible(sp, mod.hbar, rng);
        const double vx = sp.sigma_x2 * (1 + dev.x_dev);
        const double vp = sp.sigma_p2 * (1 + dev.y_dev);
        const double r = sp.r0 * (1 + dev.z_dev);
        // d(DA)^2/dt assembled from the raw variance flows
        MomentState s{0.0, 0.0, vx, vp, r};
        const MomentState d = reduced_moment_flow(mod, s);
        const cplx beta = sp.beta;
        const double h = mod.hbar;
        const double from_flow = d.var_p + 4.0 * h * h * std::norm(beta) * d.var_x +
                                 4.0 * h * beta.imag() * d.r;
        const double from_formula = dA2_drift(sp, dev, mod);
        CHECK(from_flow == doctest::Approx(from_formula).epsilon(1e-9));
    }
}
