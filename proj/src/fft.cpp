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

#include "qsd/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace qsd {
namespace {

struct Tables {
    std::vector<std::size_t> bitrev;
    // twiddles for all stages, forward sign; stage m uses entries [m/2 .. m)
    std::vector<double> wre, wim;
};

const Tables& tables_for(std::size_t n) {
    static std::mutex mtx;
    static std::map<std::size_t, std::unique_ptr<Tables>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto t = std::make_unique<Tables>();
    t->bitrev.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t(1) << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n; ++b)
            if (i & (std::size_t(1) << b)) r |= std::size_t(1) << (log2n - 1 - b);
        t->bitrev[i] = r;
    }
    t->wre.resize(n);
    t->wim.resize(n);
    for (std::size_t m = 2; m <= n; m <<= 1) {
        for (std::size_t j = 0; j < m / 2; ++j) {
            double ang = -2.0 * M_PI * double(j) / double(m);
            t->wre[m / 2 + j] = std::cos(ang);
            t->wim[m / 2 + j] = std::sin(ang);
        }
    }
    const Tables& ref = *t;
    cache.emplace(n, std::move(t));
    return ref;
}

// sign = -1 forward, +1 inverse (no normalization here)
void transform(cplx* data, std::size_t n, int sign) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw Error("fft: length must be a power of two");
    const Tables& t = tables_for(n);
    double* d = reinterpret_cast<double*>(data);  // interleaved re,im
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = t.bitrev[i];
        if (j > i) {
            std::swap(d[2 * i], d[2 * j]);
            std::swap(d[2 * i + 1], d[2 * j + 1]);
        }
    }
    for (std::size_t m = 2; m <= n; m <<= 1) {
        const std::size_t h = m / 2;
        const double* wr = &t.wre[h];
        const double* wi = &t.wim[h];
        for (std::size_t base = 0; base < n; base += m) {
            for (std::size_t j = 0; j < h; ++j) {
                const double twr = wr[j];
                const double twi = sign < 0 ? wi[j] : -wi[j];
                const std::size_t a = 2 * (base + j);
                const std::size_t b = 2 * (base + j + h);
                const double br = d[b] * twr - d[b + 1] * twi;
                const double bi = d[b] * twi + d[b + 1] * twr;
                d[b] = d[a] - br;
                d[b + 1] = d[a + 1] - bi;
                d[a] += br;
                d[a + 1] += bi;
            }
        }
    }
}

}  // namespace

void fft(cplx* data, std::size_t n) { transform(data, n, -1); }

void ifft(cplx* data, std::size_t n) {
    transform(data, n, +1);
    const double s = 1.0 / double(n);
    double* d = reinterpret_cast<double*>(data);
    for (std::size_t i = 0; i < 2 * n; ++i) d[i] *= s;
}

}  // namespace qsd
