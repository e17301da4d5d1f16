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

#include <memory>
#include <vector>

#include "qsd/common.hpp"

namespace qsd {

// Periodic position grid with its Fourier-conjugate momentum lattice.
// n must be a power of two (>= 8); momenta p_k = hbar*k span [-pi*hbar/dx,
// pi*hbar/dx) in FFT bin order (k[j] = 2*pi*j~/(n*dx), j~ in [-n/2, n/2)).
struct Grid {
    std::size_t n = 0;
    double x_min = 0, x_max = 0;
    double dx = 0;
    double hbar = 1.0;
    std::vector<double> x;  // x[j] = x_min + j*dx
    std::vector<double> k;  // angular wavenumbers, FFT order
    double p_max() const { return M_PI * hbar / dx; }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::size_t n, double x_min, double x_max, double hbar = 1.0);

inline bool same_grid(const Grid& a, const Grid& b) {
    return a.n == b.n && a.x_min == b.x_min && a.x_max == b.x_max &&
           a.hbar == b.hbar;
}

inline void require_same_grid(const Grid& a, const Grid& b) {
    if (!same_grid(a, b)) throw GridMismatch("operands live on different grids");
}

}  // namespace qsd
