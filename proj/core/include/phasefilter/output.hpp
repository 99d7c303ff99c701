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

// On-disk output: delimited tables, a metrics record and a run manifest.

#ifndef PHASEFILTER_OUTPUT_HPP_
#define PHASEFILTER_OUTPUT_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phasefilter/scenarios.hpp"

namespace phasefilter {

std::string_view version() noexcept;

/// One named column of a table; the name carries its unit, e.g. "q(length)".
struct Column {
  std::string name;
  std::span<const double> values;
};

/// Writes a header row followed by one row per index. Columns must share a length.
void write_table(const std::filesystem::path& path, std::span<const Column> columns,
                 TableFormat format);

/// Long-form (q, p, w) table, q-major.
void write_wigner_table(const std::filesystem::path& path, const WignerMap& w, TableFormat format);

/// Writes wigner{suffix}, marginal_q{suffix} and marginal_p{suffix} with the
/// extension of each requested format.
void write_plane_tables(const std::filesystem::path& dir, const PlaneResult& plane,
                        const std::string& suffix, std::span<const TableFormat> formats);

std::string metrics_json(const ScenarioResult& result);
/// Resolved scenario text prefixed by comment lines with the tool version and grid.
std::string manifest_text(const ScenarioSpec& spec);

/// Full bundle for a run: per-plane tables named *_tau{t}, metrics.json and
/// manifest.txt. Returns the files written.
std::vector<std::filesystem::path> write_bundle(const ScenarioResult& result,
                                                const std::filesystem::path& dir);

void write_text(const std::filesystem::path& path, std::string_view text);

std::string_view extension(TableFormat format) noexcept;

}  // namespace phasefilter

#endif  // PHASEFILTER_OUTPUT_HPP_
