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

#include "phasefilter/output.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <memory>

#include "json.hpp"

#include "phasefilter/errors.hpp"
#include "phasefilter/scenario_file.hpp"

#ifndef PHASEFILTER_VERSION
#define PHASEFILTER_VERSION "0.0.0"
#endif

namespace phasefilter {

namespace {

using json = nlohmann::ordered_json;

void append_double(std::string& out, double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("number formatting failed");
  out.append(buf.data(), ptr);
}

char separator(TableFormat f) { return f == TableFormat::kTsv ? '\t' : ','; }

json visibility_json(const Visibility& v) {
  return json{{"value", v.value}, {"degenerate", v.degenerate}};
}

}  // namespace

std::string_view version() noexcept { return PHASEFILTER_VERSION; }

std::string_view extension(TableFormat format) noexcept {
  return format == TableFormat::kTsv ? "tsv" : "csv";
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  if (std::fwrite(text.data(), 1, text.size(), f.get()) != text.size()) {
    throw Error("short write to " + path.string());
  }
}

void write_table(const std::filesystem::path& path, std::span<const Column> columns,
                 TableFormat format) {
  if (columns.empty()) throw InvalidArgument("write_table: no columns");
  const std::size_t rows = columns.front().values.size();
  for (const auto& c : columns) {
    if (c.values.size() != rows) throw InvalidArgument("write_table: ragged columns");
  }
  const char sep = separator(format);
  std::string out;
  out.reserve((rows + 1) * columns.size() * 24);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out.push_back(sep);
    out += columns[c].name;
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out.push_back(sep);
      append_double(out, columns[c].values[r]);
    }
    out.push_back('\n');
  }
  write_text(path, out);
}

void write_wigner_table(const std::filesystem::path& path, const WignerMap& w, TableFormat format) {
  const std::size_t n = w.size();
  const MomentumGrid lat = w.p_lattice();
  const char sep = separator(format);
  std::string out;
  out.reserve(n * n * 64 + 64);
  out += "q(length)";
  out.push_back(sep);
  out += "p(momentum)";
  out.push_back(sep);
  out += "w(1/action)\n";
  std::vector<std::string> p_text(n);
  for (std::size_t k = 0; k < n; ++k) append_double(p_text[k], lat.p(k));
  for (std::size_t j = 0; j < n; ++j) {
    std::string q_text;
    append_double(q_text, w.grid().q(j));
    const auto row = w.row(j);
    for (std::size_t k = 0; k < n; ++k) {
      out += q_text;
      out.push_back(sep);
      out += p_text[k];
      out.push_back(sep);
      append_double(out, row[k]);
      out.push_back('\n');
    }
  }
  write_text(path, out);
}

void write_plane_tables(const std::filesystem::path& dir, const PlaneResult& plane,
                        const std::string& suffix, std::span<const TableFormat> formats) {
  const SpatialGrid& g = plane.wigner.grid();
  const std::vector<double> q = g.samples();
  const std::vector<double> p = plane.wigner.p_lattice().samples();
  for (TableFormat fmt : formats) {
    const std::string ext = "." + std::string(extension(fmt));
    write_wigner_table(dir / ("wigner" + suffix + ext), plane.wigner, fmt);
    const std::array<Column, 2> mq{Column{"q(length)", q},
                                   Column{"P(1/length)", plane.marginal_q}};
    write_table(dir / ("marginal_q" + suffix + ext), mq, fmt);
    const std::array<Column, 2> mp{Column{"p(momentum)", p},
                                   Column{"P(1/momentum)", plane.marginal_p}};
    write_table(dir / ("marginal_p" + suffix + ext), mp, fmt);
  }
}

std::string metrics_json(const ScenarioResult& result) {
  const ScenarioSpec& spec = result.spec;
  json planes = json::array();
  for (const auto& p : result.planes) {
    planes.push_back(json{
        {"tau", p.tau},
        {"visibility_q", p.visibility_q.value},
        {"visibility_p", p.visibility_p.value},
        {"visibility_q_detail", visibility_json(p.visibility_q)},
        {"visibility_p_detail", visibility_json(p.visibility_p)},
        {"interference_energy", p.interference_energy},
        {"passed_fraction", p.passed_fraction},
        {"raw_passed_fraction", p.raw_passed_fraction},
        {"lobes_q", p.lobes_q},
        {"total_mass", total_mass(p.wigner)},
    });
  }
  json doc{
      {"tool", "phasefilter"},
      {"version", std::string(version())},
      {"grid",
       json{{"n", spec.grid.n},
            {"extent", spec.grid.extent},
            {"center", spec.grid.center},
            {"hbar", spec.grid.hbar}}},
      {"element_fractions", result.element_fractions},
      {"notes", result.notes},
      {"planes", std::move(planes)},
  };
  return doc.dump(2) + "\n";
}

std::string manifest_text(const ScenarioSpec& spec) {
  const SpatialGrid g = spec.grid.make();
  std::string out = "# phasefilter " + std::string(version()) + "\n";
  out += "# grid n=" + std::to_string(g.size()) + " extent=" + format_double(g.q_extent()) +
         " dq=" + format_double(g.dq()) + " dp=" + format_double(g.wigner_lattice().spacing()) +
         "\n";
  out += print_scenario(spec);
  return out;
}

std::vector<std::filesystem::path> write_bundle(const ScenarioResult& result,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& plane : result.planes) {
    const std::string suffix = "_tau" + format_double(plane.tau);
    write_plane_tables(dir, plane, suffix, result.spec.output.formats);
    for (TableFormat fmt : result.spec.output.formats) {
      const std::string ext = "." + std::string(extension(fmt));
      for (const char* stem : {"wigner", "marginal_q", "marginal_p"}) {
        written.push_back(dir / (stem + suffix + ext));
      }
    }
  }
  write_text(dir / "metrics.json", metrics_json(result));
  written.push_back(dir / "metrics.json");
  write_text(dir / "manifest.txt", manifest_text(result.spec));
  written.push_back(dir / "manifest.txt");
  return written;
}

}  // namespace phasefilter
