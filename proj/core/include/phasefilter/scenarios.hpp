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

// Experiment pipelines: a source, an ordered element chain and a list of
// observation planes, with per-plane maps and summary metrics.

#ifndef PHASEFILTER_SCENARIOS_HPP_
#define PHASEFILTER_SCENARIOS_HPP_

#include <string>
#include <variant>
#include <vector>

#include "phasefilter/filters.hpp"
#include "phasefilter/optics.hpp"
#include "phasefilter/wigner.hpp"

namespace phasefilter {

struct GridSpec {
  long n = 1024;
  double extent = 64.0;
  double center = 0.0;
  double hbar = 1.0;

  SpatialGrid make() const { return make_grid(n, center, extent, hbar); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Grid used by the detector and delayed-choice pipelines, whose states
/// spread further than the double-slit default allows.
inline constexpr GridSpec kWideGrid{1280, 80.0, 0.0, 1.0};

enum class SourceKind { kGaussian, kCat, kLensOutput };

/// gaussian: q_i, delta. cat: d, q_f. lens_output: K, p0, d, q_f.
/// Equality only looks at the fields the kind uses.
struct SourceSpec {
  SourceKind kind = SourceKind::kGaussian;
  double q_i = 8.0;
  double delta = 0.0;
  double d = 4.0;
  double q_f = 1.0;
  double K = 2.0;
  double p0 = 3.0;

  friend bool operator==(const SourceSpec& a, const SourceSpec& b);
};

/// Double-slit transmittance: two Gaussian openings of width q_f at +-d.
struct Slits {
  double d = 4.0;
  double q_f = 1.0;

  friend bool operator==(const Slits&, const Slits&) = default;
};

using ScenarioElement = std::variant<Slits, DetectorFilter, Lens, Tilt, FreeSpace>;

enum class TableFormat { kTsv, kCsv };

struct OutputSpec {
  /// Empty means "decided by the caller".
  std::string directory;
  std::vector<TableFormat> formats{TableFormat::kTsv};

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct ScenarioSpec {
  GridSpec grid;
  SourceSpec source;
  std::vector<ScenarioElement> elements;
  /// Propagation distances measured from the end of the element chain.
  std::vector<double> planes{0.0};
  OutputSpec output;

  /// Throws InvalidArgument on a constraint violation.
  void validate() const;
  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct PlaneResult {
  double tau = 0.0;
  /// Renormalized state at this plane and its map.
  PositionWavefunction state;
  WignerMap wigner;
  /// W_total minus the sum of branch maps.
  WignerMap interference;
  std::vector<double> marginal_q;
  std::vector<double> marginal_p;
  /// Incoherent sums of branch marginals; they set the visibility windows.
  std::vector<double> envelope_q;
  std::vector<double> envelope_p;
  Visibility visibility_q;
  Visibility visibility_p;
  /// Integral of |W_int| over that of the unfiltered cat state at this plane.
  double interference_energy = 0.0;
  /// Cumulative peak-normalized transmission of the chain.
  double passed_fraction = 1.0;
  /// Cumulative norm2(out) / norm2(source).
  double raw_passed_fraction = 1.0;
  /// Separate regions of marginal_q at or above 10% of its peak.
  int lobes_q = 0;
};

struct ScenarioResult {
  ScenarioSpec spec;
  std::vector<PlaneResult> planes;
  /// Peak-normalized fraction after each element, cumulative.
  std::vector<double> element_fractions;
  std::vector<std::string> notes;
};

ScenarioResult run_scenario(const ScenarioSpec& spec);

ScenarioSpec double_slit_spec(double q_i = 8.0, double d = 4.0, double q_f = 1.0,
                              double delta = 0.0, std::vector<double> planes = {0.0, 5.0},
                              GridSpec grid = {});
ScenarioSpec detector_filter_spec(double q_d, double d = 4.0, double q_f = 1.0,
                                  std::vector<double> planes = {0.0, 5.0},
                                  GridSpec grid = kWideGrid);
ScenarioSpec delayed_choice_spec(double K = 2.0, double p0 = 3.0, double d = 4.0,
                                 double q_f = 1.0, std::vector<double> planes = {0.0, 1.0, 3.0},
                                 GridSpec grid = kWideGrid);

ScenarioResult run_double_slit(double q_i = 8.0, double d = 4.0, double q_f = 1.0,
                               double delta = 0.0, std::vector<double> planes = {0.0, 5.0},
                               GridSpec grid = {});
ScenarioResult run_detector_filter(double q_d, double d = 4.0, double q_f = 1.0,
                                   std::vector<double> planes = {0.0, 5.0},
                                   GridSpec grid = kWideGrid);
ScenarioResult run_delayed_choice(double K = 2.0, double p0 = 3.0, double d = 4.0,
                                  double q_f = 1.0, std::vector<double> planes = {0.0, 1.0, 3.0},
                                  GridSpec grid = kWideGrid);

/// Number of contiguous regions where `intensity` >= fraction * max.
int count_lobes(std::span<const double> intensity, double fraction = 0.1);

}  // namespace phasefilter

#endif  // PHASEFILTER_SCENARIOS_HPP_
