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

#pragma once

#include <cstdint>
#include <random>

#include "qsd/common.hpp"

namespace qsd {

// Complex Wiener increments dxi = (dW1 + i dW2)/sqrt(2), dW ~ N(0, dt):
// M[dxi dxi*] = dt, M[dxi dxi] = 0. Same seed => bit-identical stream
// (mt19937_64 + an explicit Box-Muller, no library-defined distributions).
class NoiseProcess {
  public:
    explicit NoiseProcess(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    cplx increment(double dt) {
        const double s = std::sqrt(0.5 * dt);
        auto [z0, z1] = normal_pair();
        return {s * z0, s * z1};
    }

    // standard normal pair (Box-Muller)
    std::pair<double, double> normal_pair() {
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    double unit() {  // uniform in [0,1)
        return double(eng_() >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace qsd
