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

#include <map>
#include <string>

#include "qsd/grid.hpp"
#include "qsd/model.hpp"

namespace qsd {

// INI-style sections; unknown sections or keys are rejected (strict parsing:
// a silently ignored physics parameter is worse than an error).
struct ExperimentConfig {
    std::string experiment;

    // model block
    std::string model_kind = "standard";  // standard | qbm
    double a = 1.0, b = 0.0, m = 1.0, hbar = 1.0;
    double gamma = 0.0, kT = 0.0;
    std::string potential = "free";
    double omega = 1.0, lambda = 1.0, v0 = 1.0, l_sep = 1.0;

    // grid block
    std::size_t n = 128;
    double x_min = -20.0, x_max = 20.0;

    // integration block
    double t = 1.0, dt = 1e-3;
    std::size_t n_traj = 100;
    std::uint64_t base_seed = 1;
    std::size_t record_every = 10;

    // output block
    std::string output_dir = "out";

    LindbladModel build_model() const;
    GridPtr build_grid() const;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);  // for tests

}  // namespace qsd
