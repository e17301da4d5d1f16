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

#include <cmath>

#include "qsd/gaussian.hpp"
#include "qsd/hilbert.hpp"
#include "qsd/model.hpp"
#include "qsd/noise.hpp"

namespace qsd::test {

inline GridPtr default_grid(std::size_t n = 128, double half = 20.0, double hbar = 1.0) {
    return make_grid(n, -half, half, hbar);
}

// random normalized state with a smooth envelope (keeps it grid-representable)
inline WaveFunction random_state(const GridPtr& g, std::uint64_t seed,
                                 double width = 4.0) {
    NoiseProcess rng(seed);
    std::vector<cplx> amp(g->n);
    for (std::size_t j = 0; j < g->n; ++j) {
        auto [re, im] = rng.normal_pair();
        const double env = std::exp(-g->x[j] * g->x[j] / (2.0 * width * width));
        amp[j] = cplx(re, im) * env;
    }
    // remove high-k roughness with a double smoothing pass (periodic)
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<cplx> s(amp.size());
        const std::size_t n = amp.size();
        for (std::size_t j = 0; j < n; ++j)
            s[j] = 0.25 * amp[(j + n - 1) % n] + 0.5 * amp[j] + 0.25 * amp[(j + 1) % n];
        amp.swap(s);
    }
    return normalize({g, std::move(amp)});
}

inline WaveFunction two_packet(const GridPtr& g, const StationaryParams& sp,
                               double separation) {
    WaveFunction a = coherent_state(g, sp, -0.5 * separation, 0.0, g->hbar);
    WaveFunction b = coherent_state(g, sp, 0.5 * separation, 0.0, g->hbar);
    for (std::size_t j = 0; j < a.size(); ++j) a.amp[j] += b.amp[j];
    return normalize(a);
}

inline LindbladModel free_particle_unit() {
    return standard(1.0, 0.0, 1.0, 1.0, Potential::free_particle());
}

}  // namespace qsd::test
