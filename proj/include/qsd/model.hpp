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

#include <optional>

#include "qsd/potential.hpp"

namespace qsd {

// Dissipation/temperature parameters of the quantum Brownian motion mapping.
struct QBMParams {
    double gamma = 0;
    double kT = 0;
    double m = 1;
    double hbar = 1;
    double D() const { return hbar * hbar / (8.0 * m * gamma * kT); }
};

// Open-system model: environment coupling L = a x + i b p and
// H = p^2/2m + V(x) + c {x,p}.
struct LindbladModel {
    double a = 1;
    double b = 0;
    double c = 0;
    double m = 1;
    double hbar = 1;
    Potential potential = Potential::free_particle();
    std::optional<QBMParams> qbm;  // set when built via from_qbm

    double friction() const { return 2.0 * hbar * a * b; }  // drag rate in d<p>/dt
};

// c = hbar a b / 2, the choice that preserves the Ehrenfest relation.
LindbladModel standard(double a, double b, double m, double hbar, Potential potential);

// a = (2D)^{-1/2}, b = (2D)^{1/2} gamma/hbar, c = gamma/2, D = hbar^2/(8 m gamma kT).
LindbladModel from_qbm(const QBMParams& q, Potential potential);

// r = (Dx)^2 |V'''(x_bar)| / (2 max(|V'(x_bar)|, eps)); quadratic-approximation
// quality, small r is good. Returns +inf when V' vanishes but V''' does not.
double validity_ratio(const LindbladModel& model, double x_bar, double delta_x2);

}  // namespace qsd
