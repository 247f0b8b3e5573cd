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

#ifndef AFMSIM_SCHEDULE_IO_HPP
#define AFMSIM_SCHEDULE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace afm {

/// Writes `k,theta_radians` rows, one per rotation, after a comment line
/// stating that the full schedule is present (nothing trimmed at either end).
void write_schedule_csv(std::ostream& out, const std::vector<double>& rotations);
void write_schedule_csv(const std::string& path, const std::vector<double>& rotations);

/// Reads a schedule back; '#' lines are skipped, the header is required.
std::vector<double> read_schedule_csv(std::istream& in);
std::vector<double> read_schedule_csv(const std::string& path);

}  // namespace afm

#endif
