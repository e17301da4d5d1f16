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

#include "qsd/model.hpp"

#include <cmath>
#include <limits>

namespace qsd {

LindbladModel standard(double a, double b, double m, double hbar, Potential potential) {
    if (!(m > 0)) throw NonPositiveParameter("mass must be positive");
    if (!(hbar > 0)) throw NonPositiveParameter("hbar must be positive");
    if (a < 0) throw NonPositiveParameter("a < 0; use the phase freedom to fix a >= 0");
    LindbladModel mod;
    mod.a = a;
    mod.b = b;
    mod.c = 0.5 * hbar * a * b;
    mod.m = m;
    mod.hbar = hbar;
    mod.potential = std::move(potential);
    return mod;
}

LindbladModel from_qbm(const QBMParams& q, Potential potential) {
    if (!(q.gamma > 0)) throw NonPositiveParameter("gamma must be positive");
    if (!(q.kT > 0)) throw NonPositiveParameter("kT must be positive");
    if (!(q.m > 0)) throw NonPositiveParameter("mass must be positive");
    if (!(q.hbar > 0)) throw NonPositiveParameter("hbar must be positive");
    const double D = q.D();
    LindbladModel mod = standard(1.0 / std::sqrt(2.0 * D),
                                 std::sqrt(2.0 * D) * q.gamma / q.hbar,
                                 q.m, q.hbar, std::move(potential));
    mod.qbm = q;
    return mod;
}

double validity_ratio(const LindbladModel& model, double x_bar, double delta_x2) {
    if (delta_x2 < 0) throw NonPositiveParameter("delta_x2 must be >= 0");
    constexpr double eps_floor = 1e-12;
    const double num = 0.5 * delta_x2 * std::abs(model.potential.d3V(x_bar));
    const double den = std::abs(model.potential.dV(x_bar));
    if (num == 0.0) return 0.0;
    if (den < eps_floor) return std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace qsd
