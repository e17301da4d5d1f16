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
#include <stdexcept>
#include <string>
#include <vector>

namespace qsd {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : Error { using Error::Error; };
struct UnknownTag : Error { using Error::Error; };
struct NonPositiveParameter : Error { using Error::Error; };
struct NormCollapse : Error { using Error::Error; };
struct StabilityViolation : Error { using Error::Error; };
struct NoStableRoot : Error { using Error::Error; };
struct CFLViolation : Error { using Error::Error; };
struct NegativeDiffusion : Error { using Error::Error; };
struct CellTooSmall : Error { using Error::Error; };
struct GridTooLarge : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Non-fatal diagnostics (grid-adequacy checks and the like). Thread-local so
// parallel trajectories do not race; callers snapshot and reset around a run.
namespace warnings {
enum class Kind { wrap, scope };
void raise(Kind k, const std::string& what);
int count(Kind k);
void reset();
// last message per kind, empty if none since reset
std::string last(Kind k);
}  // namespace warnings

}  // namespace qsd
