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

#include "qsd/fft.hpp"
#include "test_util.hpp"

using namespace qsd;
using test::default_grid;
using test::random_state;

TEST_CASE("grid construction and validation") {
    auto g = make_grid(128, -20, 20);
    CHECK(g->dx == doctest::Approx(40.0 / 128));
    CHECK(g->p_max() == doctest::Approx(M_PI / g->dx));
    CHECK_THROWS_AS(make_grid(100, -1, 1), NonPositiveParameter);  // not a power of two
    CHECK_THROWS_AS(make_grid(4, -1, 1), NonPositiveParameter);    // too small
    CHECK_THROWS_AS(make_grid(64, 1, -1), NonPositiveParameter);
}

TEST_CASE("fft round trip and plane-wave delta") {
    const std::size_t n = 64;
    NoiseProcess rng(7);
    std::vector<cplx> a(n), b;
    for (auto& c : a) {
        auto [re, im] = rng.normal_pair();
        c = {re, im};
    }
    b = a;
    fft(b.data(), n);
    ifft(b.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-12);

    // single-frequency input concentrates on one bin
    for (std::size_t j = 0; j < n; ++j)
        a[j] = std::exp(cplx(0, 2.0 * M_PI * 5.0 * double(j) / double(n)));
    fft(a.data(), n);
    CHECK(std::abs(a[5] - cplx(double(n), 0)) < 1e-9);
    for (std::size_t j = 0; j < n; ++j)
        if (j != 5) CHECK(std::abs(a[j]) < 1e-9);
}

TEST_CASE("apply_x on a delta peak and a centered gaussian") {
    auto g = default_grid();
    std::vector<cplx> amp(g->n, 0.0);
    const std::size_t j0 = g->n / 2;  // x = 0
    REQUIRE(g->x[j0] == doctest::Approx(0.0));
    amp[j0] = 1.0;
    WaveFunction delta = normalize({g, amp});
    WaveFunction xd = apply_x(delta);
    CHECK(norm2(xd) == doctest::Approx(0.0).epsilon(1e-12));

    const double q = 3.25;
    WaveFunction psi = gaussian_packet(g, cplx(0.5, 0.0), q, 0.0);
    CHECK(expectation(psi, Obs::x).real() == doctest::Approx(q).epsilon(1e-8));
}

TEST_CASE("expectation of x equals direct summation on random states") {
    auto g = default_grid();
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        WaveFunction psi = random_state(g, seed);
        double direct = 0;
        for (std::size_t j = 0; j < g->n; ++j)
            direct += g->x[j] * std::norm(psi.amp[j]) * g->dx;
        CHECK(expectation(psi, Obs::x).real() == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("apply_p: plane wave is an eigenstate") {
    auto g = default_grid(128, 16.0);
    const double dk = 2.0 * M_PI / (double(g->n) * g->dx);
    const double p0 = 4.0 * dk;  // on-lattice momentum
    std::vector<cplx> amp(g->n);
    for (std::size_t j = 0; j < g->n; ++j) amp[j] = std::exp(cplx(0, p0 * g->x[j]));
    WaveFunction psi = normalize({g, std::move(amp)});
    WaveFunction pp = apply_p(psi);
    for (std::size_t j = 0; j < g->n; ++j)
        CHECK(std::abs(pp.amp[j] - p0 * psi.amp[j]) < 1e-10);
}

TEST_CASE("apply_p: parity and the boosted gaussian") {
    auto g = default_grid();
    WaveFunction sym = gaussian_packet(g, cplx(0.3, 0.0), 0.0, 0.0);
    CHECK(std::abs(expectation(sym, Obs::p)) < 1e-10);

    const double p0 = 1.75;
    WaveFunction boosted = gaussian_packet(g, cplx(0.3, -0.1), 1.0, p0);
    CHECK(expectation(boosted, Obs::p).real() == doctest::Approx(p0).epsilon(1e-8));
}

TEST_CASE("apply_p warns when the state touches the edge") {
    auto g = default_grid(64, 4.0);
    warnings::reset();
    WaveFunction wide = gaussian_packet(g, cplx(0.02, 0.0), 0.0, 0.0);
    (void)apply_p(wide);
    CHECK(warnings::count(warnings::Kind::wrap) > 0);
    warnings::reset();
}

TEST_CASE("spectral p agrees with 4th-order finite differences on smooth states") {
    auto g = default_grid(256, 20.0);
    // sigma_x = 1.5, about 9.6 dx
    WaveFunction psi = gaussian_packet(g, cplx(1.0 / (4.0 * 2.25), 0.05), 0.5, 0.8);
    WaveFunction sp = apply_p(psi);
    const std::size_t n = g->n;
    double worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx d = (-psi.amp[(j + 2) % n] + 8.0 * psi.amp[(j + 1) % n] -
                        8.0 * psi.amp[(j + n - 1) % n] + psi.amp[(j + n - 2) % n]) /
                       (12.0 * g->dx);
        const cplx fd = cplx(0, -g->hbar) * d;
        worst = std::max(worst, std::abs(fd - sp.amp[j]));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("hermitian expectations are real") {
    auto g = default_grid(128, 10.0);
    const Potential pot = Potential::quartic(0.05);
    // a boosted packet and a mild two-packet superposition
    WaveFunction packet = gaussian_packet(g, cplx(0.4, -0.15), 1.1, 0.9);
    WaveFunction cat = gaussian_packet(g, cplx(0.4, 0.0), -2.0, 0.0);
    {
        WaveFunction other = gaussian_packet(g, cplx(0.4, 0.0), 2.0, 0.4);
        for (std::size_t j = 0; j < cat.size(); ++j) cat.amp[j] += other.amp[j];
        cat = normalize(cat);
    }
    for (const WaveFunction& psi : {packet, cat})
        for (Obs op : {Obs::x, Obs::p, Obs::x2, Obs::p2, Obs::sym_xp, Obs::V, Obs::Vp,
                       Obs::xVp, Obs::pVp_sym})
            CHECK(std::abs(expectation(psi, op, pot).imag()) < 1e-10);
    CHECK_THROWS_AS(expectation(packet, Obs::V), UnknownTag);
}

TEST_CASE("canonical commutator in the correlations") {
    auto g = default_grid();
    for (std::uint64_t seed : {5u, 6u}) {
        WaveFunction psi = random_state(g, seed);
        const cplx sxp = correlation(psi, Obs::x, Obs::p).value;
        const cplx spx = correlation(psi, Obs::p, Obs::x).value;
        CHECK(std::abs(sxp - spx - cplx(0, g->hbar)) < 1e-8);
        CHECK(sxp.imag() == doctest::Approx(0.5 * g->hbar).epsilon(1e-8));
        // sigma(B,B) real and nonnegative
        const cplx sxx = correlation(psi, Obs::x, Obs::x).value;
        CHECK(std::abs(sxx.imag()) < 1e-12);
        CHECK(sxx.real() >= -1e-12);
    }
}

TEST_CASE("stationary free-particle gaussian hits the closed-form moments") {
    auto g = default_grid();
    // shape for hbar = m = a = 1, b = 0
    const cplx beta = std::sqrt(cplx(0, -0.25));
    REQUIRE(beta.real() > 0);
    WaveFunction psi = gaussian_packet(g, beta, 0.0, 0.0);
    const MomentState m = moments(psi);
    const double s = std::sqrt(0.5);
    CHECK(m.var_x == doctest::Approx(s).epsilon(1e-8));
    CHECK(m.var_p == doctest::Approx(s).epsilon(1e-8));
    CHECK(m.r == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(std::sqrt(m.var_x * m.var_p) == doctest::Approx(s).epsilon(1e-8));
    CHECK(m.var_x * m.var_p - m.r * m.r == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("uncertainty inequality holds for arbitrary states") {
    auto g = default_grid();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        WaveFunction psi = random_state(g, seed, 3.0 + 0.3 * double(seed));
        const MomentState m = moments(psi);
        CHECK(m.var_x >= 0);
        CHECK(m.var_x * m.var_p - m.r * m.r >= 0.25 - 1e-6);
    }
}

TEST_CASE("moments agree with the expectation interface") {
    auto g = default_grid();
    WaveFunction psi = random_state(g, 42);
    const MomentState m = moments(psi);
    const double xm = expectation(psi, Obs::x).real();
    const double pm = expectation(psi, Obs::p).real();
    CHECK(m.x_mean == doctest::Approx(xm).epsilon(1e-12));
    CHECK(m.p_mean == doctest::Approx(pm).epsilon(1e-10));
    CHECK(m.var_x ==
          doctest::Approx(expectation(psi, Obs::x2).real() - xm * xm).epsilon(1e-12));
    CHECK(m.var_p ==
          doctest::Approx(expectation(psi, Obs::p2).real() - pm * pm).epsilon(1e-10));
    const double r_tag = 0.5 * expectation(psi, Obs::sym_xp).real() - xm * pm;
    CHECK(m.r == doctest::Approx(r_tag).epsilon(1e-10));
}

TEST_CASE("normalization tolerance") {
    auto g = default_grid();
    WaveFunction psi = random_state(g, 9);
    for (auto& c : psi.amp) c *= 3.7;
    WaveFunction n = normalize(psi);
    CHECK(std::abs(norm2(n) - 1.0) < 1e-10);
}
