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

#include <CLI11.hpp>
#include <iostream>

#include "qsd/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qsdlab: stochastic pure-state unravelings of open-system dynamics"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    std::int64_t seed_override = -1;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "path to the experiment config")->required();
    run->add_option("--output-dir", output_dir, "override [output] dir");
    run->add_option("--seed-override", seed_override, "override integration.base_seed");
    run->add_option("--threads", threads, "worker threads for trajectory fan-out");

    CLI::App* list = app.add_subcommand("list", "list available experiments");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::cout << qsd::list_experiments_text();
        return 0;
    }

    try {
        qsd::ExperimentConfig cfg = qsd::parse_config(config_path);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (seed_override >= 0) cfg.base_seed = std::uint64_t(seed_override);
        return qsd::run_experiment(cfg, threads);
    } catch (const qsd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
