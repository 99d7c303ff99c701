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

#include "phasefilter/scenario_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "phasefilter/errors.hpp"

namespace phasefilter {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> keys;
  std::vector<Entry> rows;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(std::string_view s, bool commas) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || (commas && c == ',')) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

enum class Bound { kAny, kNonNegative, kPositive, kPositiveOrInf };

double parse_number(std::string_view text, int line, std::string_view key,
                    Bound bound = Bound::kAny) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  const std::string name(key);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError(line, name + ": '" + std::string(text) + "' is not a number");
  }
  if (std::isnan(v) || (std::isinf(v) && !(bound == Bound::kPositiveOrInf && v > 0.0))) {
    throw ParseError(line, name + " must be finite");
  }
  switch (bound) {
    case Bound::kAny:
      break;
    case Bound::kNonNegative:
      if (v < 0.0) throw ParseError(line, name + " must be non-negative");
      break;
    case Bound::kPositive:
    case Bound::kPositiveOrInf:
      if (!(v > 0.0)) throw ParseError(line, name + " must be positive");
      break;
  }
  return v;
}

// Reads `key = value` pairs of one section, rejecting keys outside `allowed`.
class KeyReader {
 public:
  KeyReader(const Section& s, std::string_view section) : s_(s), section_(section) {}

  void allow(std::initializer_list<std::string_view> keys) {
    for (const auto& [k, e] : s_.keys) {
      bool ok = false;
      for (auto a : keys) ok = ok || k == a;
      if (!ok) throw ParseError(e.line, "unknown key '" + k + "' in [" + std::string(section_) + "]");
    }
  }

  const Entry* find(const std::string& key) const {
    auto it = s_.keys.find(key);
    return it == s_.keys.end() ? nullptr : &it->second;
  }

  void number(const std::string& key, double& out, Bound bound) const {
    if (const Entry* e = find(key)) out = parse_number(e->value, e->line, key, bound);
  }

 private:
  const Section& s_;
  std::string_view section_;
};

std::map<std::string, std::string> element_params(const std::vector<std::string>& words,
                                                  int line) {
  std::map<std::string, std::string> params;
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto eq = words[i].find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == words[i].size()) {
      throw ParseError(line, "expected name=value, got '" + words[i] + "'");
    }
    const std::string key = words[i].substr(0, eq);
    if (!params.emplace(key, words[i].substr(eq + 1)).second) {
      throw ParseError(line, "parameter '" + key + "' given twice");
    }
  }
  return params;
}

ScenarioElement parse_element(const Entry& row) {
  // Tolerate spaces around '=' by gluing them before splitting.
  std::string glued;
  for (std::size_t i = 0; i < row.value.size(); ++i) {
    const char c = row.value[i];
    if (c == ' ' || c == '\t') {
      const auto next = row.value.find_first_not_of(" \t", i);
      const bool before_eq = next != std::string::npos && row.value[next] == '=';
      const bool after_eq = !glued.empty() && glued.back() == '=';
      if (before_eq || after_eq) continue;
    }
    glued.push_back(c);
  }
  const std::vector<std::string> words = split_words(glued, false);
  const std::string& kind = words.front();
  const int line = row.line;
  auto params = element_params(words, line);

  auto take = [&](const std::string& key, Bound bound, std::optional<double> fallback) {
    auto it = params.find(key);
    if (it == params.end()) {
      if (!fallback) throw ParseError(line, kind + ": missing parameter '" + key + "'");
      return *fallback;
    }
    const double v = parse_number(it->second, line, key, bound);
    params.erase(it);
    return v;
  };
  auto done = [&] {
    if (!params.empty()) {
      throw ParseError(line, kind + ": unknown parameter '" + params.begin()->first + "'");
    }
  };

  if (kind == "slits") {
    Slits s;
    s.d = take("d", Bound::kNonNegative, 4.0);
    s.q_f = take("q_f", Bound::kPositive, 1.0);
    done();
    return s;
  }
  if (kind == "detector") {
    DetectorFilter f;
    f.q_d = take("q_d", Bound::kPositive, std::nullopt);
    f.center = take("center", Bound::kAny, 0.0);
    done();
    return f;
  }
  if (kind == "lens") {
    Lens l;
    l.K = take("K", Bound::kPositiveOrInf, std::nullopt);
    done();
    return l;
  }
  if (kind == "tilt") {
    Tilt t;
    t.p0 = take("p0", Bound::kAny, std::nullopt);
    done();
    return t;
  }
  if (kind == "free") {
    FreeSpace f;
    f.tau = take("tau", Bound::kAny, std::nullopt);
    done();
    return f;
  }
  throw ParseError(line, "unknown element '" + kind + "'");
}

constexpr std::array<std::string_view, 5> kSections{"grid", "source", "elements", "planes",
                                                    "output"};

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

ScenarioSpec parse_scenario(std::string_view text) {
  std::map<std::string, Section> sections;
  Section* current = nullptr;
  std::string current_name;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (auto s : kSections) known = known || s == name;
      if (!known) throw ParseError(line_no, "unknown section [" + name + "]");
      if (sections.count(name) != 0) throw ParseError(line_no, "section [" + name + "] repeated");
      current = &sections[name];
      current->line = line_no;
      current_name = name;
      continue;
    }
    if (current == nullptr) throw ParseError(line_no, "content before the first section");

    const auto eq = line.find('=');
    const bool keyed = current_name != "elements" && eq != std::string_view::npos;
    if (current_name == "elements" || (current_name == "planes" && !keyed)) {
      current->rows.push_back(Entry{std::string(line), line_no});
      continue;
    }
    if (!keyed) throw ParseError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    if (current_name == "planes") {
      if (key != "tau") throw ParseError(line_no, "unknown key '" + key + "' in [planes]");
      current->rows.push_back(Entry{value, line_no});
      continue;
    }
    if (!current->keys.emplace(key, Entry{value, line_no}).second) {
      throw ParseError(line_no, "key '" + key + "' repeated");
    }
  }

  ScenarioSpec spec;
  if (auto it = sections.find("grid"); it != sections.end()) {
    KeyReader r(it->second, "grid");
    r.allow({"n", "extent", "center", "hbar"});
    if (const Entry* e = r.find("n")) {
      long n = 0;
      const auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), n);
      if (ec != std::errc() || ptr != e->value.data() + e->value.size() || n < 4 || n % 2 != 0) {
        throw ParseError(e->line, "n must be an even integer >= 4");
      }
      spec.grid.n = n;
    }
    r.number("extent", spec.grid.extent, Bound::kPositive);
    r.number("center", spec.grid.center, Bound::kAny);
    r.number("hbar", spec.grid.hbar, Bound::kPositive);
  }

  if (auto it = sections.find("source"); it != sections.end()) {
    KeyReader r(it->second, "source");
    std::string kind = "gaussian";
    if (const Entry* e = r.find("kind")) kind = e->value;
    SourceSpec& s = spec.source;
    if (kind == "gaussian") {
      s.kind = SourceKind::kGaussian;
      r.allow({"kind", "q_i", "delta"});
      r.number("q_i", s.q_i, Bound::kPositive);
      r.number("delta", s.delta, Bound::kAny);
    } else if (kind == "cat") {
      s.kind = SourceKind::kCat;
      r.allow({"kind", "d", "q_f"});
    } else if (kind == "lens_output") {
      s.kind = SourceKind::kLensOutput;
      r.allow({"kind", "K", "p0", "d", "q_f"});
      r.number("K", s.K, Bound::kPositiveOrInf);
      r.number("p0", s.p0, Bound::kAny);
    } else {
      throw ParseError(r.find("kind")->line, "unknown source kind '" + kind + "'");
    }
    if (s.kind != SourceKind::kGaussian) {
      r.number("d", s.d, Bound::kNonNegative);
      r.number("q_f", s.q_f, Bound::kPositive);
    }
  }

  if (auto it = sections.find("elements"); it != sections.end()) {
    for (const Entry& row : it->second.rows) spec.elements.push_back(parse_element(row));
  }

  if (auto it = sections.find("planes"); it != sections.end()) {
    spec.planes.clear();
    for (const Entry& row : it->second.rows) {
      for (const auto& w : split_words(row.value, true)) {
        const double tau = parse_number(w, row.line, "tau", Bound::kNonNegative);
        if (!spec.planes.empty() && !(tau > spec.planes.back())) {
          throw ParseError(row.line, "planes must be strictly ascending");
        }
        spec.planes.push_back(tau);
      }
    }
    if (spec.planes.empty()) throw ParseError(it->second.line, "[planes] lists no tau values");
  }

  if (auto it = sections.find("output"); it != sections.end()) {
    KeyReader r(it->second, "output");
    r.allow({"directory", "formats"});
    if (const Entry* e = r.find("directory")) spec.output.directory = e->value;
    if (const Entry* e = r.find("formats")) {
      spec.output.formats.clear();
      for (const auto& w : split_words(e->value, true)) {
        if (w == "tsv") {
          spec.output.formats.push_back(TableFormat::kTsv);
        } else if (w == "csv") {
          spec.output.formats.push_back(TableFormat::kCsv);
        } else {
          throw ParseError(e->line, "unknown format '" + w + "'");
        }
      }
      if (spec.output.formats.empty()) throw ParseError(e->line, "formats is empty");
    }
  }

  try {
    spec.validate();
  } catch (const InvalidArgument& ex) {
    throw ParseError(0, ex.what());
  }
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string print_scenario(const ScenarioSpec& spec) {
  const auto f = [](double v) { return format_double(v); };
  std::string out;
  out += "[grid]\n";
  out += "n = " + std::to_string(spec.grid.n) + "\n";
  out += "extent = " + f(spec.grid.extent) + "\n";
  out += "center = " + f(spec.grid.center) + "\n";
  out += "hbar = " + f(spec.grid.hbar) + "\n";

  out += "\n[source]\n";
  const SourceSpec& s = spec.source;
  switch (s.kind) {
    case SourceKind::kGaussian:
      out += "kind = gaussian\nq_i = " + f(s.q_i) + "\ndelta = " + f(s.delta) + "\n";
      break;
    case SourceKind::kCat:
      out += "kind = cat\nd = " + f(s.d) + "\nq_f = " + f(s.q_f) + "\n";
      break;
    case SourceKind::kLensOutput:
      out += "kind = lens_output\nK = " + f(s.K) + "\np0 = " + f(s.p0) + "\nd = " + f(s.d) +
             "\nq_f = " + f(s.q_f) + "\n";
      break;
  }

  out += "\n[elements]\n";
  for (const auto& e : spec.elements) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Slits>) {
            out += "slits d=" + f(x.d) + " q_f=" + f(x.q_f) + "\n";
          } else if constexpr (std::is_same_v<T, DetectorFilter>) {
            out += "detector q_d=" + f(x.q_d) + " center=" + f(x.center) + "\n";
          } else if constexpr (std::is_same_v<T, Lens>) {
            out += "lens K=" + f(x.K) + "\n";
          } else if constexpr (std::is_same_v<T, Tilt>) {
            out += "tilt p0=" + f(x.p0) + "\n";
          } else {
            out += "free tau=" + f(x.tau) + "\n";
          }
        },
        e);
  }

  out += "\n[planes]\ntau =";
  for (double t : spec.planes) out += " " + f(t);
  out += "\n";

  out += "\n[output]\n";
  if (!spec.output.directory.empty()) out += "directory = " + spec.output.directory + "\n";
  out += "formats =";
  for (auto fmt : spec.output.formats) out += fmt == TableFormat::kTsv ? " tsv" : " csv";
  out += "\n";
  return out;
}

}  // namespace phasefilter
