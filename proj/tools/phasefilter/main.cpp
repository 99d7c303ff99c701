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

// phasefilter command-line front end.
//
// Exit codes: 0 success, 1 usage, 2 scenario parse error, 3 runtime error,
// 4 grid clipping, 5 validation failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phasefilter/errors.hpp"
#include "phasefilter/output.hpp"
#include "phasefilter/scenario_file.hpp"
#include "phasefilter/scenarios.hpp"
#include "phasefilter/validation.hpp"

namespace fs = std::filesystem;
using namespace phasefilter;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitClipping = 4;
constexpr int kExitValidation = 5;

constexpr const char* kOutEnv = "PHASEFILTER_OUT";

struct GridOverrides {
  std::optional<long> n;
  std::optional<double> extent;

  void apply(GridSpec& g) const {
    if (n) g.n = *n;
    if (extent) g.extent = *extent;
  }
};

fs::path default_out(const std::string& fallback) {
  const char* env = std::getenv(kOutEnv);
  return (env != nullptr && *env != '\0') ? fs::path(env) : fs::path(fallback);
}

void report_error(const std::optional<fs::path>& dir, const std::string& kind,
                  const std::string& message, int code, int line = 0) {
  nlohmann::ordered_json rec{{"error", kind}, {"message", message}, {"exit_code", code}};
  if (line > 0) rec["line"] = line;
  std::cerr << "phasefilter: " << kind << ": " << message << "\n";
  if (!dir) return;
  try {
    fs::create_directories(*dir);
    write_text(*dir / "error.json", rec.dump(2) + "\n");
  } catch (const std::exception&) {
    // The record is best effort; the exit code already carries the failure.
  }
}

template <class F>
int guarded(const std::optional<fs::path>& dir, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    report_error(dir, "parse", e.what(), kExitParse, e.line());
    return kExitParse;
  } catch (const ClippingError& e) {
    report_error(dir, "clipping", e.what(), kExitClipping);
    return kExitClipping;
  } catch (const std::exception& e) {
    report_error(dir, "runtime", e.what(), kExitRuntime);
    return kExitRuntime;
  }
}

int cmd_run(const std::string& file, const std::optional<std::string>& out,
            const GridOverrides& grid) {
  std::optional<fs::path> dir;
  if (out) dir = fs::path(*out);
  return guarded(dir, [&] {
    ScenarioSpec spec = load_scenario(file);
    if (!dir) dir = spec.output.directory.empty() ? default_out("phasefilter-out")
                                                  : fs::path(spec.output.directory);
    grid.apply(spec.grid);
    const ScenarioResult result = run_scenario(spec);
    write_bundle(result, *dir);
    for (const auto& p : result.planes) {
      std::cout << "tau=" << format_double(p.tau) << " visibility_q=" << p.visibility_q.value
                << " visibility_p=" << p.visibility_p.value
                << " interference_energy=" << p.interference_energy
                << " passed_fraction=" << p.passed_fraction << "\n";
    }
    std::cout << "wrote " << dir->string() << "\n";
    return kExitOk;
  });
}

ScenarioResult single_plane(const ScenarioResult& r, std::size_t i) {
  ScenarioResult one{r.spec, {r.planes.at(i)}, r.element_fractions, r.notes};
  one.spec.planes = {r.planes.at(i).tau};
  return one;
}

void write_figure(const fs::path& dir, const ScenarioResult& r, std::size_t plane) {
  fs::create_directories(dir);
  const ScenarioResult one = single_plane(r, plane);
  const TableFormat tsv[] = {TableFormat::kTsv};
  write_plane_tables(dir, one.planes.front(), "", tsv);
  write_text(dir / "metrics.json", metrics_json(one));
  write_text(dir / "manifest.txt", manifest_text(one.spec));
}

void write_transmittance(const fs::path& dir, const GridSpec& gs, double q_d) {
  fs::create_directories(dir);
  const SpatialGrid g = gs.make();
  const std::vector<double> q = g.samples();
  const PositionWavefunction det = detector_transmittance(g, q_d, 4.0);
  const TwoLobeState slits = double_slit_lobes(g, 4.0, 1.0, EdgePolicy::kAllow);
  const PositionWavefunction s = slits.sum();
  std::vector<double> td(q.size()), ts(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    td[j] = det.amp[j].real();
    ts[j] = s.amp[j].real();
  }
  const Column cols[] = {{"q(length)", q},
                         {"detector(1/sqrt(length))", td},
                         {"slits(1/sqrt(length))", ts}};
  write_table(dir / "transmittance.tsv", cols, TableFormat::kTsv);
}

int cmd_figures(const std::optional<std::string>& out, const GridOverrides& grid) {
  const fs::path root = out ? fs::path(*out) : default_out("phasefilter-figures");
  return guarded(root, [&] {
    auto with_grid = [&](ScenarioSpec spec) {
      grid.apply(spec.grid);
      return spec;
    };
    GridSpec narrow;
    GridSpec wide = kWideGrid;
    grid.apply(narrow);
    grid.apply(wide);

    ScenarioSpec incident;
    incident.source.q_i = 1.0;
    write_figure(root / "fig02", run_scenario(with_grid(incident)), 0);

    ScenarioSpec cat;
    cat.source.kind = SourceKind::kCat;
    cat.planes = {0.0, 5.0};
    const ScenarioResult slits = run_scenario(with_grid(cat));
    write_figure(root / "fig03", slits, 0);
    write_figure(root / "fig04", slits, 1);

    write_transmittance(root / "fig05", narrow, 2.4);
    write_figure(root / "fig06", run_scenario(with_grid(detector_filter_spec(2.4, 4.0, 1.0, {0.0}))), 0);
    write_transmittance(root / "fig07", narrow, 4.0);
    write_figure(root / "fig08", run_scenario(with_grid(detector_filter_spec(4.0, 4.0, 1.0, {0.0}))), 0);

    const ScenarioSpec delayed = with_grid(delayed_choice_spec());
    fs::create_directories(root / "fig09");
    write_text(root / "fig09" / "setup.txt", manifest_text(delayed));
    const ScenarioResult dc = run_scenario(delayed);
    write_figure(root / "fig10", dc, 0);
    write_figure(root / "fig11", dc, 1);
    write_figure(root / "fig12", dc, 2);
    std::cout << "wrote " << root.string() << "\n";
    return kExitOk;
  });
}

int cmd_validate(bool quick, const std::vector<int>& ids) {
  return guarded(std::nullopt, [&] {
    ValidationOptions opts;
    opts.quick = quick;
    std::vector<int> todo = ids;
    if (todo.empty()) {
      for (int i = 1; i <= kValidationChecks; ++i) todo.push_back(i);
    }
    int passed = 0;
    for (int id : todo) {
      const CheckResult r = run_check(id, opts);
      std::cout << format_check(r) << "\n" << std::flush;
      passed += r.passed ? 1 : 0;
    }
    std::cout << passed << "/" << todo.size() << " checks passed\n";
    return passed == static_cast<int>(todo.size()) ? kExitOk : kExitValidation;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phasefilter: phase-space filtering of quantum wavefunctions"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.footer(std::string("Environment:\n  ") + kOutEnv +
             "  default output directory for run and figures\n"
             "Exit codes: 0 ok, 1 usage, 2 parse error, 3 runtime error, 4 clipping, "
             "5 validation failure");

  GridOverrides grid;
  long grid_n = 0;
  double grid_extent = 0.0;
  auto* n_opt = app.add_option("--grid-n", grid_n, "Override the grid size (even)")
                    ->check(CLI::Range(4L, 1L << 20));
  auto* e_opt = app.add_option("--grid-extent", grid_extent, "Override the grid extent")
                    ->check(CLI::PositiveNumber);
  app.fallthrough();

  std::string file;
  std::string out;
  auto* run = app.add_subcommand("run", "Run a scenario file and write its output bundle");
  run->add_option("scenario", file, "Scenario file")->required()->check(CLI::ExistingFile);
  auto* run_out = run->add_option("--out", out, "Output directory");

  auto* figures = app.add_subcommand("figures", "Write the built-in figure data set");
  auto* fig_out = figures->add_option("--out", out, "Output directory");

  bool quick = false;
  std::vector<int> ids;
  auto* validate = app.add_subcommand("validate", "Run the oracle checks");
  validate->add_flag("--quick", quick, "Smaller oracle grids");
  validate->add_option("--check", ids, "Run only these check ids")
      ->check(CLI::Range(1, kValidationChecks));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (*n_opt) grid.n = grid_n;
  if (*e_opt) grid.extent = grid_extent;

  if (*run) return cmd_run(file, *run_out ? std::optional(out) : std::nullopt, grid);
  if (*figures) return cmd_figures(*fig_out ? std::optional(out) : std::nullopt, grid);
  if (*validate) return cmd_validate(quick, ids);
  return kExitUsage;
}
