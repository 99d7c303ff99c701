// Copyright 2026 The phasefilter Authors
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

// Plain-text scenario files.
//
//   [grid]      n, extent, center, hbar            (key = value)
//   [source]    kind = gaussian | cat | lens_output, then its parameters
//   [elements]  one per line: slits d=4 q_f=1 | detector q_d=2.4 center=4
//               | lens K=2 | tilt p0=3 | free tau=1
//   [planes]    tau = 0 5   (bare numbers are accepted too)
//   [output]    directory, formats = tsv | csv
//
// '#' starts a comment. Sections are optional but may appear once.

#ifndef PHASEFILTER_SCENARIO_FILE_HPP_
#define PHASEFILTER_SCENARIO_FILE_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "phasefilter/scenarios.hpp"

namespace phasefilter {

/// Throws ParseError naming the offending line.
ScenarioSpec parse_scenario(std::string_view text);
ScenarioSpec load_scenario(const std::filesystem::path& path);

/// Canonical text; parse_scenario(print_scenario(s)) == s.
std::string print_scenario(const ScenarioSpec& spec);

/// Shortest text that reads back to the same double, independent of locale.
std::string format_double(double value);

}  // namespace phasefilter

#endif  // PHASEFILTER_SCENARIO_FILE_HPP_
