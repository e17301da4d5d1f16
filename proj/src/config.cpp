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

#include "qsd/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qsd/grid.hpp"

namespace qsd {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::set<std::string> kExperiments = {
    "stationary", "localization", "duality", "fokker_planck",
    "thermalization", "histories", "rates"};

struct RawConfig {
    std::map<std::string, std::map<std::string, std::string>> sections;
};

RawConfig parse_raw(std::istream& in) {
    RawConfig raw;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line = line.substr(0, cpos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (raw.sections.count(section))
                throw ConfigError("duplicate section [" + section + "]");
            raw.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (raw.sections[section].count(key))
            throw ConfigError("duplicate key " + section + "." + key);
        raw.sections[section][key] = val;
    }
    return raw;
}

class SectionReader {
  public:
    SectionReader(RawConfig& raw, std::string name, bool required)
        : name_(std::move(name)) {
        auto it = raw.sections.find(name_);
        if (it == raw.sections.end()) {
            if (required) throw ConfigError("missing [" + name_ + "] section");
            present_ = false;
        } else {
            kv_ = &it->second;
        }
    }
    bool present() const { return present_; }

    template <class T>
    bool get(const std::string& key, T& out) {
        if (!present_) return false;
        auto it = kv_->find(key);
        if (it == kv_->end()) return false;
        seen_.insert(key);
        std::istringstream ss(it->second);
        if constexpr (std::is_same_v<T, std::string>) {
            out = it->second;
        } else {
            if (!(ss >> out) || !(ss >> std::ws).eof())
                throw ConfigError("bad value for " + name_ + "." + key + ": '" +
                                  it->second + "'");
        }
        return true;
    }
    template <class T>
    void require(const std::string& key, T& out) {
        if (!get(key, out))
            throw ConfigError("missing required key " + name_ + "." + key);
    }
    void finish() const {
        if (!present_) return;
        for (const auto& [k, v] : *kv_)
            if (!seen_.count(k))
                throw ConfigError("unknown key " + name_ + "." + k);
    }

  private:
    std::string name_;
    const std::map<std::string, std::string>* kv_ = nullptr;
    bool present_ = true;
    std::set<std::string> seen_;
};

ExperimentConfig parse_raw_config(RawConfig raw) {
    ExperimentConfig cfg;

    SectionReader exp(raw, "experiment", true);
    exp.require("name", cfg.experiment);
    exp.finish();
    if (!kExperiments.count(cfg.experiment))
        throw ConfigError("experiment.name: unknown experiment '" + cfg.experiment + "'");

    SectionReader model(raw, "model", true);
    model.get("kind", cfg.model_kind);
    if (cfg.model_kind == "standard") {
        model.require("a", cfg.a);
        model.require("b", cfg.b);
    } else if (cfg.model_kind == "qbm") {
        model.require("gamma", cfg.gamma);
        model.require("kT", cfg.kT);
    } else {
        throw ConfigError("model.kind must be 'standard' or 'qbm'");
    }
    model.get("m", cfg.m);
    model.get("hbar", cfg.hbar);
    model.get("potential", cfg.potential);
    if (cfg.potential == "harmonic" || cfg.potential == "inverted_harmonic")
        model.require("omega", cfg.omega);
    else if (cfg.potential == "quartic")
        model.require("lambda", cfg.lambda);
    else if (cfg.potential == "double_well") {
        model.require("v0", cfg.v0);
        model.require("l_sep", cfg.l_sep);
    } else if (cfg.potential != "free")
        throw ConfigError("model.potential: unknown potential '" + cfg.potential + "'");
    model.finish();

    SectionReader grid(raw, "grid", true);
    grid.require("n", cfg.n);
    grid.require("x_min", cfg.x_min);
    grid.require("x_max", cfg.x_max);
    grid.finish();

    SectionReader integ(raw, "integration", true);
    integ.require("t", cfg.t);
    integ.require("dt", cfg.dt);
    integ.get("n_traj", cfg.n_traj);
    integ.get("base_seed", cfg.base_seed);
    integ.get("record_every", cfg.record_every);
    integ.finish();

    SectionReader out(raw, "output", false);
    if (out.present()) {
        out.get("dir", cfg.output_dir);
        out.finish();
    }

    std::set<std::string> known = {"experiment", "model", "grid", "integration", "output"};
    for (const auto& [name, kv] : raw.sections)
        if (!known.count(name)) throw ConfigError("unknown section [" + name + "]");

    if (!(cfg.dt > 0)) throw ConfigError("integration.dt must be positive");
    if (!(cfg.t >= 0)) throw ConfigError("integration.t must be >= 0");
    if (cfg.n_traj < 1) throw ConfigError("integration.n_traj must be >= 1");
    return cfg;
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    return parse_raw_config(parse_raw(in));
}

ExperimentConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_raw_config(parse_raw(in));
}

LindbladModel ExperimentConfig::build_model() const {
    Potential pot = Potential::free_particle();
    if (potential == "harmonic") pot = Potential::harmonic(omega, m);
    else if (potential == "inverted_harmonic") pot = Potential::inverted_harmonic(omega, m);
    else if (potential == "quartic") pot = Potential::quartic(lambda);
    else if (potential == "double_well") pot = Potential::double_well(v0, l_sep);

    if (model_kind == "qbm") {
        QBMParams q;
        q.gamma = gamma;
        q.kT = kT;
        q.m = m;
        q.hbar = hbar;
        return from_qbm(q, std::move(pot));
    }
    return standard(a, b, m, hbar, std::move(pot));
}

GridPtr ExperimentConfig::build_grid() const { return make_grid(n, x_min, x_max, hbar); }

}  // namespace qsd
