// Copyright 2026 The afmsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "afm/schedule_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace afm {

void write_schedule_csv(std::ostream& out, const std::vector<double>& rotations) {
    out << "# full rotation schedule; no run-in or tail angles omitted\n";
    out << "k,theta_radians\n";
    char buf[64];
    for (std::size_t k = 0; k < rotations.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", k, rotations[k]);
        out << buf;
    }
}

void write_schedule_csv(const std::string& path, const std::vector<double>& rotations) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open schedule file for writing: " + path);
    write_schedule_csv(out, rotations);
    if (!out) throw std::runtime_error("failed writing schedule file: " + path);
}

std::vector<double> read_schedule_csv(std::istream& in) {
    std::vector<double> rotations;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "k,theta_radians") {
                throw std::runtime_error("schedule file missing 'k,theta_radians' header");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("malformed schedule row: " + line);
        }
        std::size_t used = 0;
        const double value = std::stod(line.substr(comma + 1), &used);
        rotations.push_back(value);
    }
    if (!header_seen) throw std::runtime_error("schedule file is empty");
    return rotations;
}

std::vector<double> read_schedule_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schedule file: " + path);
    return read_schedule_csv(in);
}

}  // namespace afm
