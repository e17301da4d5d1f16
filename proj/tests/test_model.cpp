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
#include <limits>

#include "test_util.hpp"

using namespace qsd;

TEST_CASE("standard model fixes c = hbar a b / 2") {
    CHECK(standard(1, 0, 1, 1, Potential::free_particle()).c == 0.0);
    CHECK(standard(2, 3, 1, 1, Potential::free_particle()).c == doctest::Approx(3.0));
    CHECK_THROWS_AS(standard(1, 0, -1, 1, Potential::free_particle()), NonPositiveParameter);
    CHECK_THROWS_AS(standard(1, 0, 1, 0, Potential::free_particle()), NonPositiveParameter);
    CHECK_THROWS_AS(standard(-1, 0, 1, 1, Potential::free_particle()), NonPositiveParameter);
}

TEST_CASE("qbm mapping at gamma = kT = m = hbar = 1") {
    QBMParams q{1.0, 1.0, 1.0, 1.0};
    CHECK(q.D() == doctest::Approx(0.125));
    const LindbladModel mod = from_qbm(q, Potential::free_particle());
    CHECK(mod.a == doctest::Approx(2.0));
    CHECK(mod.b == doctest::Approx(0.5));
    CHECK(mod.c == doctest::Approx(0.5));
    // cross-check against the double-commutator coefficients:
    // a^2/2 = 2 m gamma kT / hbar^2 and b^2/2 = gamma/(8 m kT)
    CHECK(0.5 * mod.a * mod.a == doctest::Approx(2.0));
    CHECK(0.5 * mod.b * mod.b == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("qbm identities hold across parameters") {
    for (double gamma : {0.1, 0.5, 2.0})
        for (double kT : {0.5, 1.0, 10.0}) {
            QBMParams q{gamma, kT, 1.3, 0.7};
            const LindbladModel mod = from_qbm(q, Potential::free_particle());
            CHECK(mod.hbar * mod.a * mod.b == doctest::Approx(gamma).epsilon(1e-14));
            CHECK(mod.c == doctest::Approx(0.5 * gamma).epsilon(1e-14));
            CHECK(0.5 * mod.b * mod.b ==
                  doctest::Approx(gamma / (8.0 * q.m * kT)).epsilon(1e-14));
        }
    CHECK_THROWS_AS(from_qbm(QBMParams{0.0, 1.0, 1.0, 1.0}, Potential::free_particle()),
                    NonPositiveParameter);
    CHECK_THROWS_AS(from_qbm(QBMParams{1.0, -2.0, 1.0, 1.0}, Potential::free_particle()),
                    NonPositiveParameter);
}

TEST_CASE("validity ratio") {
    LindbladModel harm = standard(1, 0, 1, 1, Potential::harmonic(2.0));
    CHECK(validity_ratio(harm, 0.7, 0.5) == 0.0);

    LindbladModel quart = standard(1, 0, 1, 1, Potential::quartic(1.0));
    CHECK(validity_ratio(quart, 1.0, 0.01) == doctest::Approx(0.03));
    // at a well minimum the slope vanishes but the third derivative does not
    LindbladModel dw = standard(1, 0, 1, 1, Potential::double_well(1.0, 2.0));
    CHECK(std::isinf(validity_ratio(dw, 2.0, 0.5)));

    LindbladModel freem = test::free_particle_unit();
    CHECK(validity_ratio(freem, 3.0, 2.0) == 0.0);
    CHECK_THROWS_AS(validity_ratio(freem, 0.0, -1.0), NonPositiveParameter);
}

TEST_CASE("potential derivative evaluators agree with finite differences") {
    const double h = 1e-4;
    for (const Potential& pot :
         {Potential::harmonic(1.3), Potential::inverted_harmonic(0.8),
          Potential::quartic(0.6), Potential::double_well(2.0, 1.5)}) {
        for (double x : {-1.7, -0.3, 0.9, 2.1}) {
            const double fd1 = (pot.V(x + h) - pot.V(x - h)) / (2 * h);
            const double fd2 = (pot.V(x + h) - 2 * pot.V(x) + pot.V(x - h)) / (h * h);
            CHECK(pot.dV(x) == doctest::Approx(fd1).epsilon(1e-4));
            CHECK(pot.d2V(x) == doctest::Approx(fd2).epsilon(1e-3));
        }
    }
}

TEST_CASE("tabulated potential reproduces a smooth function and its derivatives") {
    std::vector<double> xs, vs;
    for (int i = 0; i <= 200; ++i) {
        const double x = -5.0 + 10.0 * i / 200.0;
        xs.push_back(x);
        vs.push_back(0.5 * x * x + 0.1 * x * x * x);
    }
    const Potential tab = Potential::tabulated(xs, vs);
    for (double x : {-2.0, -0.5, 1.0, 3.0}) {
        CHECK(tab.V(x) == doctest::Approx(0.5 * x * x + 0.1 * x * x * x).epsilon(1e-6));
        CHECK(tab.dV(x) == doctest::Approx(x + 0.3 * x * x).epsilon(1e-3));
        CHECK(tab.d2V(x) == doctest::Approx(1.0 + 0.6 * x).epsilon(2e-2));
    }
    CHECK_THROWS_AS(Potential::tabulated({0, 1}, {0, 1}), NonPositiveParameter);
}
