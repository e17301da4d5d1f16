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

#include "qsd/grid.hpp"

#include <atomic>
#include <cmath>

namespace qsd {

namespace warnings {
namespace {
thread_local int wrap_count = 0;
thread_local int scope_count = 0;
thread_local std::string wrap_last, scope_last;
}  // namespace

void raise(Kind k, const std::string& what) {
    if (k == Kind::wrap) {
        ++wrap_count;
        wrap_last = what;
    } else {
        ++scope_count;
        scope_last = what;
    }
}
int count(Kind k) { return k == Kind::wrap ? wrap_count : scope_count; }
void reset() {
    wrap_count = scope_count = 0;
    wrap_last.clear();
    scope_last.clear();
}
std::string last(Kind k) { return k == Kind::wrap ? wrap_last : scope_last; }
}  // namespace warnings

GridPtr make_grid(std::size_t n, double x_min, double x_max, double hbar) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw NonPositiveParameter("grid size must be a power of two >= 8");
    if (!(x_max > x_min)) throw NonPositiveParameter("grid requires x_max > x_min");
    if (!(hbar > 0)) throw NonPositiveParameter("hbar must be positive");
    auto g = std::make_shared<Grid>();
    g->n = n;
    g->x_min = x_min;
    g->x_max = x_max;
    g->hbar = hbar;
    g->dx = (x_max - x_min) / double(n);
    g->x.resize(n);
    g->k.resize(n);
    const double dk = 2.0 * M_PI / (double(n) * g->dx);
    for (std::size_t j = 0; j < n; ++j) {
        g->x[j] = x_min + double(j) * g->dx;
        const double jt = (j < n / 2) ? double(j) : double(j) - double(n);
        g->k[j] = dk * jt;
    }
    return g;
}

}  // namespace qsd
