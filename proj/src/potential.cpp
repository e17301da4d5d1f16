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

#include "qsd/potential.hpp"

#include <algorithm>
#include <cmath>

namespace qsd {

Potential Potential::free_particle() { return Potential(); }

Potential Potential::harmonic(double omega, double mass) {
    if (!(omega > 0) || !(mass > 0)) throw NonPositiveParameter("harmonic: omega, mass > 0");
    Potential p;
    p.tag_ = Tag::harmonic;
    p.a_ = mass * omega * omega;  // V = a/2 x^2
    return p;
}

Potential Potential::inverted_harmonic(double omega, double mass) {
    if (!(omega > 0) || !(mass > 0)) throw NonPositiveParameter("inverted_harmonic: omega, mass > 0");
    Potential p;
    p.tag_ = Tag::inverted_harmonic;
    p.a_ = -mass * omega * omega;
    return p;
}

Potential Potential::quartic(double lambda) {
    Potential p;
    p.tag_ = Tag::quartic;
    p.a_ = lambda;  // V = lambda x^4 / 4
    return p;
}

Potential Potential::double_well(double v0, double l_sep) {
    if (!(v0 > 0) || !(l_sep > 0)) throw NonPositiveParameter("double_well: v0, l_sep > 0");
    Potential p;
    p.tag_ = Tag::double_well;
    p.a_ = v0;
    p.b_ = l_sep;  // V = v0 ((x/l)^2 - 1)^2
    return p;
}

Potential Potential::tabulated(std::vector<double> xs, std::vector<double> vs) {
    if (xs.size() != vs.size() || xs.size() < 4)
        throw NonPositiveParameter("tabulated: need >= 4 samples with matching lengths");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw NonPositiveParameter("tabulated: xs must increase");
    Potential p;
    p.tag_ = Tag::tabulated;
    p.xs_ = std::move(xs);
    p.vs_ = std::move(vs);
    // natural cubic spline: tridiagonal solve for the knot curvatures S''(x_i)
    const std::size_t n = p.xs_.size();
    std::vector<double> h(n - 1), rhs(n, 0);
    for (std::size_t i = 0; i < n - 1; ++i) h[i] = p.xs_[i + 1] - p.xs_[i];
    p.m_.assign(n, 0.0);
    for (std::size_t i = 1; i < n - 1; ++i)
        rhs[i] = 6.0 * ((p.vs_[i + 1] - p.vs_[i]) / h[i] -
                        (p.vs_[i] - p.vs_[i - 1]) / h[i - 1]);
    std::vector<double> cp(n, 0), dp(n, 0);
    for (std::size_t i = 1; i < n - 1; ++i) {
        const double m = 2.0 * (h[i - 1] + h[i]) - h[i - 1] * cp[i - 1];
        cp[i] = h[i] / m;
        dp[i] = (rhs[i] - h[i - 1] * dp[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 1;) p.m_[i] = dp[i] - cp[i] * p.m_[i + 1];
    return p;
}

double Potential::spline_eval(double x, int deriv) const {
    const auto& xs = xs_;
    // clamp to the table; outside we extend the end cubics
    std::size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    if (i == 0) i = 1;
    if (i >= xs.size()) i = xs.size() - 1;
    const std::size_t j = i - 1;
    const double h = xs[i] - xs[j];
    const double u = x - xs[j];
    // S = a + b u + (m_j/2) u^2 + d u^3 on [x_j, x_i], m are S'' at knots
    const double d = (m_[i] - m_[j]) / (6.0 * h);
    const double b = (vs_[i] - vs_[j]) / h - h * (2.0 * m_[j] + m_[i]) / 6.0;
    switch (deriv) {
        case 0: return vs_[j] + u * (b + u * (0.5 * m_[j] + u * d));
        case 1: return b + u * (m_[j] + 3.0 * u * d);
        case 2: return m_[j] + 6.0 * u * d;
        case 3: return 6.0 * d;
    }
    return 0;
}

double Potential::V(double x) const {
    switch (tag_) {
        case Tag::free: return 0;
        case Tag::harmonic:
        case Tag::inverted_harmonic: return 0.5 * a_ * x * x;
        case Tag::quartic: return 0.25 * a_ * x * x * x * x;
        case Tag::double_well: {
            const double u = x / b_;
            const double w = u * u - 1.0;
            return a_ * w * w;
        }
        case Tag::tabulated: return spline_eval(x, 0);
    }
    return 0;
}

double Potential::dV(double x) const {
    switch (tag_) {
        case Tag::free: return 0;
        case Tag::harmonic:
        case Tag::inverted_harmonic: return a_ * x;
        case Tag::quartic: return a_ * x * x * x;
        case Tag::double_well: {
            const double u = x / b_;
            return 4.0 * a_ * u * (u * u - 1.0) / b_;
        }
        case Tag::tabulated: return spline_eval(x, 1);
    }
    return 0;
}

double Potential::d2V(double x) const {
    switch (tag_) {
        case Tag::free: return 0;
        case Tag::harmonic:
        case Tag::inverted_harmonic: return a_;
        case Tag::quartic: return 3.0 * a_ * x * x;
        case Tag::double_well: {
            const double u = x / b_;
            return 4.0 * a_ * (3.0 * u * u - 1.0) / (b_ * b_);
        }
        case Tag::tabulated: return spline_eval(x, 2);
    }
    return 0;
}

double Potential::d3V(double x) const {
    switch (tag_) {
        case Tag::free: return 0;
        case Tag::harmonic:
        case Tag::inverted_harmonic: return 0;
        case Tag::quartic: return 6.0 * a_ * x;
        case Tag::double_well: return 24.0 * a_ * x / (b_ * b_ * b_ * b_);
        case Tag::tabulated: return spline_eval(x, 3);
    }
    return 0;
}

std::string Potential::name() const {
    switch (tag_) {
        case Tag::free: return "free";
        case Tag::harmonic: return "harmonic";
        case Tag::inverted_harmonic: return "inverted_harmonic";
        case Tag::quartic: return "quartic";
        case Tag::double_well: return "double_well";
        case Tag::tabulated: return "tabulated";
    }
    return "?";
}

}  // namespace qsd
