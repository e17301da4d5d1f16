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

#include <complex>
#include <cstddef>

#include "qsd/common.hpp"

namespace qsd {

// In-place iterative radix-2 FFT for power-of-two n.
// forward:  X_k = sum_j x_j exp(-2*pi*i*j*k/n)   (unnormalized)
// inverse:  x_j = (1/n) sum_k X_k exp(+2*pi*i*j*k/n)
// Twiddle/bit-reversal tables are cached per size; reads are lock-free after
// first use of a given size.
void fft(cplx* data, std::size_t n);
void ifft(cplx* data, std::size_t n);

}  // namespace qsd
