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

#include <functional>

#include "qsd/common.hpp"

namespace qsd {

// Real-valued f(q,p) on a uniform rectangular lattice (cell centers).
// values[iq * np + ip].
struct PhaseSpaceField {
    std::size_t nq = 0, np = 0;
    double q0 = 0, dq = 0;  // q0: first cell center
    double p0 = 0, dp = 0;
    std::vector<double> values;

    double& at(std::size_t iq, std::size_t ip) { return values[iq * np + ip]; }
    double at(std::size_t iq, std::size_t ip) const { return values[iq * np + ip]; }
    double q_center(std::size_t iq) const { return q0 + double(iq) * dq; }
    double p_center(std::size_t ip) const { return p0 + double(ip) * dp; }
    double mass() const;
    double min_value() const;
    void normalize();  // scale to unit mass
};

PhaseSpaceField make_field(std::size_t nq, double q_lo, double q_hi,
                           std::size_t np, double p_lo, double p_hi);

// fill from a density function (evaluated at cell centers), normalized
PhaseSpaceField fill_field(PhaseSpaceField proto,
                           const std::function<double(double, double)>& f);

double l1_distance(const PhaseSpaceField& a, const PhaseSpaceField& b);

}  // namespace qsd
