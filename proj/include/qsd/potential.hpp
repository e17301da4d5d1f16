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

#include <string>
#include <vector>

#include "qsd/common.hpp"

namespace qsd {

// Potential catalog: free, harmonic(omega), inverted_harmonic(omega),
// quartic(lambda) = lambda x^4/4, double_well(v0, l_sep) with minima at
// +-l_sep and barrier height v0, and tabulated samples with cubic
// interpolation (so V', V'', V''' stay computable).
class Potential {
  public:
    enum class Tag { free, harmonic, inverted_harmonic, quartic, double_well, tabulated };

    static Potential free_particle();
    static Potential harmonic(double omega, double mass = 1.0);
    static Potential inverted_harmonic(double omega, double mass = 1.0);
    static Potential quartic(double lambda);
    static Potential double_well(double v0, double l_sep);
    static Potential tabulated(std::vector<double> xs, std::vector<double> vs);

    double V(double x) const;
    double dV(double x) const;    // V'
    double d2V(double x) const;   // V''
    double d3V(double x) const;   // V'''

    Tag tag() const { return tag_; }
    bool quadratic() const {
        return tag_ == Tag::free || tag_ == Tag::harmonic || tag_ == Tag::inverted_harmonic;
    }
    std::string name() const;

  private:
    Tag tag_ = Tag::free;
    double a_ = 0, b_ = 0;  // tag-dependent parameters
    // tabulated data (natural cubic spline)
    std::vector<double> xs_, vs_, m_;  // m_: second derivatives at knots
    double spline_eval(double x, int deriv) const;
};

}  // namespace qsd
