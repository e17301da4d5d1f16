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

#include <json.hpp>
#include <string>
#include <vector>

#include "qsd/phase_space.hpp"

namespace qsd {

// Pass/fail record for one named check; serialized into report.json.
struct Assertion {
    std::string id;
    std::string description;
    double measured = 0;
    double expected = 0;
    double tolerance = 0;
    std::string comparison = "abs";  // abs | rel | le | ge | range
    bool pass = false;
};

class Report {
  public:
    explicit Report(std::string experiment) : experiment_(std::move(experiment)) {}

    // |measured - expected| <= tol
    bool check_abs(const std::string& id, const std::string& desc, double measured,
                   double expected, double tol);
    // |measured - expected| <= tol * |expected|
    bool check_rel(const std::string& id, const std::string& desc, double measured,
                   double expected, double rel_tol);
    bool check_le(const std::string& id, const std::string& desc, double measured,
                  double bound);
    bool check_ge(const std::string& id, const std::string& desc, double measured,
                  double bound);
    bool check_true(const std::string& id, const std::string& desc, bool ok);

    void value(const std::string& key, double v) { values_[key] = v; }
    void value(const std::string& key, const std::string& v) { values_[key] = v; }

    bool all_pass() const;
    void write_json(const std::string& path, const nlohmann::json& config_echo) const;
    const std::vector<Assertion>& assertions() const { return assertions_; }

  private:
    std::string experiment_;
    std::vector<Assertion> assertions_;
    nlohmann::json values_ = nlohmann::json::object();
};

// fixed formatting: scientific, 17 significant digits (reproducible output)
std::string format_double(double v);

// comma-separated with a "# schema=1" first line and a header row
void write_series_csv(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

// long-format grid dump: q, p, value
void write_field_csv(const std::string& path, const PhaseSpaceField& f);

}  // namespace qsd
