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

#include "qsd/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace qsd {

bool Report::check_abs(const std::string& id, const std::string& desc, double measured,
                       double expected, double tol) {
    Assertion a{id, desc, measured, expected, tol, "abs",
                std::abs(measured - expected) <= tol};
    assertions_.push_back(a);
    return a.pass;
}

bool Report::check_rel(const std::string& id, const std::string& desc, double measured,
                       double expected, double rel_tol) {
    Assertion a{id, desc, measured, expected, rel_tol, "rel",
                std::abs(measured - expected) <= rel_tol * std::abs(expected)};
    assertions_.push_back(a);
    return a.pass;
}

bool Report::check_le(const std::string& id, const std::string& desc, double measured,
                      double bound) {
    Assertion a{id, desc, measured, bound, 0, "le", measured <= bound};
    assertions_.push_back(a);
    return a.pass;
}

bool Report::check_ge(const std::string& id, const std::string& desc, double measured,
                      double bound) {
    Assertion a{id, desc, measured, bound, 0, "ge", measured >= bound};
    assertions_.push_back(a);
    return a.pass;
}

bool Report::check_true(const std::string& id, const std::string& desc, bool ok) {
    Assertion a{id, desc, ok ? 1.0 : 0.0, 1.0, 0, "bool", ok};
    assertions_.push_back(a);
    return ok;
}

bool Report::all_pass() const {
    for (const auto& a : assertions_)
        if (!a.pass) return false;
    return true;
}

void Report::write_json(const std::string& path, const nlohmann::json& config_echo) const {
    nlohmann::json j;
    j["experiment"] = experiment_;
    j["config"] = config_echo;
    j["pass"] = all_pass();
    j["values"] = values_;
    j["assertions"] = nlohmann::json::array();
    for (const auto& a : assertions_) {
        nlohmann::json ja;
        ja["id"] = a.id;
        ja["description"] = a.description;
        ja["measured"] = a.measured;
        ja["expected"] = a.expected;
        ja["tolerance"] = a.tolerance;
        ja["comparison"] = a.comparison;
        ja["pass"] = a.pass;
        j["assertions"].push_back(ja);
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_series_csv(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# schema=1\n";
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
}

void write_field_csv(const std::string& path, const PhaseSpaceField& f) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# schema=1\n";
    out << "q,p,value\n";
    for (std::size_t iq = 0; iq < f.nq; ++iq)
        for (std::size_t ip = 0; ip < f.np; ++ip)
            out << format_double(f.q_center(iq)) << "," << format_double(f.p_center(ip))
                << "," << format_double(f.at(iq, ip)) << "\n";
}

}  // namespace qsd
