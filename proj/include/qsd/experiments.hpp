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

#include "qsd/config.hpp"

namespace qsd {

// Runs the named experiment, writing series.csv / report.json / field_*.csv
// into cfg.output_dir. Returns the process exit code: 0 all assertions pass,
// 1 some assertion failed, 2 config error, 3 numerical error.
int run_experiment(const ExperimentConfig& cfg, int threads = 0);

std::string list_experiments_text();

}  // namespace qsd
