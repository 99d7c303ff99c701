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

#include "phasefilter/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "phasefilter/errors.hpp"

namespace phasefilter {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

bool finite(double v) { return std::isfinite(v); }

PositionWavefunction multiply(const PositionWavefunction& a, const PositionWavefunction& b) {
  PositionWavefunction out = a;
  for (std::size_t j = 0; j < out.amp.size(); ++j) out.amp[j] *= b.amp[j];
  return out;
}

double abs_integral(const WignerMap& w) {
  double s = 0.0;
  for (double x : w.values()) s += std::abs(x);
  return s * w.dq() * w.dp();
}

std::vector<double> sum_marginals(const std::vector<WignerMap>& parts, bool along_q) {
  std::vector<double> out;
  for (const auto& w : parts) {
    const std::vector<double> m = along_q ? marginal_q(w) : marginal_p(w);
    if (out.empty()) out.assign(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) out[i] += m[i];
  }
  return out;
}

Visibility windowed_visibility(const std::vector<double>& intensity,
                               const std::vector<double>& envelope) {
  return fringe_visibility(intensity, envelope_window(envelope));
}

// Integral of |W_int| for the two-lobe state with the given slit parameters
// after free propagation over tau.
double reference_energy(const SpatialGrid& grid, const Slits& slits, double tau) {
  const TwoLobeState lobes = double_slit_lobes(grid, slits.d, slits.q_f, EdgePolicy::kAllow);
  const PositionWavefunction plus = free_propagate(lobes.plus, tau, EdgePolicy::kAllow);
  const PositionWavefunction minus = free_propagate(lobes.minus, tau, EdgePolicy::kAllow);
  PositionWavefunction total = plus;
  for (std::size_t j = 0; j < total.amp.size(); ++j) total.amp[j] += minus.amp[j];
  const std::vector<WignerMap> parts{wigner_from_position(plus), wigner_from_position(minus)};
  return abs_integral(split_interference(wigner_from_position(total), parts).interference);
}

std::optional<Slits> reference_slits(const ScenarioSpec& spec) {
  if (spec.source.kind != SourceKind::kGaussian) return Slits{spec.source.d, spec.source.q_f};
  for (const auto& e : spec.elements) {
    if (const auto* s = std::get_if<Slits>(&e)) return *s;
  }
  return std::nullopt;
}

}  // namespace

bool operator==(const SourceSpec& a, const SourceSpec& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SourceKind::kGaussian:
      return a.q_i == b.q_i && a.delta == b.delta;
    case SourceKind::kCat:
      return a.d == b.d && a.q_f == b.q_f;
    case SourceKind::kLensOutput:
      return a.K == b.K && a.p0 == b.p0 && a.d == b.d && a.q_f == b.q_f;
  }
  return false;
}

void ScenarioSpec::validate() const {
  (void)grid.make();
  const SourceSpec& s = source;
  switch (s.kind) {
    case SourceKind::kGaussian:
      require(s.q_i > 0.0 && finite(s.q_i), "source q_i must be positive and finite");
      require(finite(s.delta), "source delta must be finite");
      break;
    case SourceKind::kLensOutput:
      require(s.K > 0.0, "source K must be positive");
      require(finite(s.p0), "source p0 must be finite");
      [[fallthrough]];
    case SourceKind::kCat:
      require(s.d >= 0.0 && finite(s.d), "source d must be non-negative and finite");
      require(s.q_f > 0.0 && finite(s.q_f), "source q_f must be positive and finite");
      break;
  }
  for (const auto& e : elements) {
    if (const auto* sl = std::get_if<Slits>(&e)) {
      require(sl->d >= 0.0 && finite(sl->d), "slits d must be non-negative and finite");
      require(sl->q_f > 0.0 && finite(sl->q_f), "slits q_f must be positive and finite");
    } else {
      std::visit(
          [](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (!std::is_same_v<T, Slits>) validate_element(Element{x});
          },
          e);
    }
  }
  require(!planes.empty(), "at least one observation plane is required");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    require(finite(planes[i]) && planes[i] >= 0.0, "plane tau must be finite and non-negative");
    if (i > 0) require(planes[i] > planes[i - 1], "planes must be strictly ascending");
  }
  require(!output.formats.empty(), "at least one output format is required");
}

int count_lobes(std::span<const double> intensity, double fraction) {
  if (intensity.empty()) return 0;
  const double cut = fraction * *std::max_element(intensity.begin(), intensity.end());
  int lobes = 0;
  bool inside = false;
  for (double x : intensity) {
    const bool above = x >= cut;
    if (above && !inside) ++lobes;
    inside = above;
  }
  return lobes;
}

ScenarioResult run_scenario(const ScenarioSpec& spec) {
  spec.validate();
  const SpatialGrid grid = spec.grid.make();
  ScenarioResult result{spec, {}, {}, {}};

  std::vector<PositionWavefunction> branches;
  switch (spec.source.kind) {
    case SourceKind::kGaussian:
      branches.push_back(gaussian_state(grid, spec.source.delta, spec.source.q_i, 0.0, 0.0,
                                        EdgePolicy::kAllow));
      break;
    case SourceKind::kCat: {
      TwoLobeState lobes = double_slit_lobes(grid, spec.source.d, spec.source.q_f);
      branches.push_back(std::move(lobes.plus));
      branches.push_back(std::move(lobes.minus));
      break;
    }
    case SourceKind::kLensOutput: {
      TwoLobeState lobes =
          lens_output_lobes(grid, spec.source.d, spec.source.q_f, spec.source.K, spec.source.p0);
      branches.push_back(std::move(lobes.plus));
      branches.push_back(std::move(lobes.minus));
      break;
    }
  }
  auto sum = [](const std::vector<PositionWavefunction>& bs) {
    PositionWavefunction t = bs.front();
    for (std::size_t b = 1; b < bs.size(); ++b) {
      for (std::size_t j = 0; j < t.amp.size(); ++j) t.amp[j] += bs[b].amp[j];
    }
    return t;
  };
  PositionWavefunction total = sum(branches);
  const double source_norm2 = total.norm2();

  double cumulative = 1.0;
  for (const auto& element : spec.elements) {
    double fraction = 1.0;
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          auto filter_by = [&](const PositionWavefunction& t, std::vector<PositionWavefunction> parts) {
            const PositionFilterOutput out = apply_position_filter(total, t);
            if (out.blocked()) throw Error("element chain blocks the whole state");
            fraction = out.peak_normalized_fraction;
            total = out.state_raw;
            branches = std::move(parts);
          };
          if constexpr (std::is_same_v<T, Slits>) {
            if (spec.source.kind == SourceKind::kGaussian && spec.source.q_i < 5.0 * e.q_f) {
              result.notes.push_back("incident width q_i is not much larger than the slit width");
            }
            const TwoLobeState lobes = double_slit_lobes(grid, e.d, e.q_f, EdgePolicy::kAllow);
            std::vector<PositionWavefunction> parts;
            for (const auto& b : branches) {
              parts.push_back(multiply(b, lobes.plus));
              parts.push_back(multiply(b, lobes.minus));
            }
            filter_by(lobes.sum(), std::move(parts));
          } else if constexpr (std::is_same_v<T, DetectorFilter>) {
            const PositionWavefunction t = detector_transmittance(grid, e.q_d, e.center);
            std::vector<PositionWavefunction> parts;
            for (const auto& b : branches) parts.push_back(multiply(b, t));
            filter_by(t, std::move(parts));
          } else if constexpr (std::is_same_v<T, Lens>) {
            total = thin_lens(total, e.K);
            for (auto& b : branches) b = thin_lens(b, e.K);
          } else if constexpr (std::is_same_v<T, Tilt>) {
            TiltResult t = tilt(total, e.p0);
            if (t.band_limit_warning) {
              result.notes.push_back("tilt pushes momentum content past the band limit");
            }
            total = std::move(t.state);
            for (auto& b : branches) b = tilt(b, e.p0).state;
          } else {
            total = free_propagate(total, e.tau);
            for (auto& b : branches) b = free_propagate(b, e.tau, EdgePolicy::kAllow);
          }
        },
        element);
    cumulative *= fraction;
    result.element_fractions.push_back(cumulative);
  }

  const double out_norm2 = total.norm2();
  const double raw_fraction = out_norm2 / source_norm2;
  const double scale = 1.0 / std::sqrt(out_norm2);
  total = total.scaled(scale);
  for (auto& b : branches) b = b.scaled(scale);

  const std::optional<Slits> reference = reference_slits(spec);

  for (double tau : spec.planes) {
    PositionWavefunction state = free_propagate(total, tau);
    std::vector<WignerMap> parts;
    for (const auto& b : branches) {
      parts.push_back(wigner_from_position(free_propagate(b, tau, EdgePolicy::kAllow)));
    }
    WignerMap w = wigner_from_position(state);
    InterferenceSplit split = split_interference(w, parts);

    std::vector<double> mq = marginal_q(w);
    std::vector<double> mp = marginal_p(w);
    std::vector<double> env_q = sum_marginals(parts, true);
    std::vector<double> env_p = sum_marginals(parts, false);
    const Visibility vq = windowed_visibility(mq, env_q);
    const Visibility vp = windowed_visibility(mp, env_p);

    const double energy = abs_integral(split.interference);
    const double ref = reference ? reference_energy(grid, *reference, tau) : 0.0;
    const int lobes = count_lobes(mq);

    result.planes.push_back(PlaneResult{
        .tau = tau,
        .state = std::move(state),
        .wigner = std::move(w),
        .interference = std::move(split.interference),
        .marginal_q = std::move(mq),
        .marginal_p = std::move(mp),
        .envelope_q = std::move(env_q),
        .envelope_p = std::move(env_p),
        .visibility_q = vq,
        .visibility_p = vp,
        .interference_energy = ref > 0.0 ? energy / ref : energy,
        .passed_fraction = cumulative,
        .raw_passed_fraction = raw_fraction,
        .lobes_q = lobes,
    });
  }
  return result;
}

ScenarioSpec double_slit_spec(double q_i, double d, double q_f, double delta,
                              std::vector<double> planes, GridSpec grid) {
  ScenarioSpec spec;
  spec.grid = grid;
  spec.source = SourceSpec{SourceKind::kGaussian, q_i, delta};
  spec.elements = {Slits{d, q_f}};
  spec.planes = std::move(planes);
  return spec;
}

ScenarioSpec detector_filter_spec(double q_d, double d, double q_f, std::vector<double> planes,
                                  GridSpec grid) {
  ScenarioSpec spec;
  spec.grid = grid;
  spec.source.kind = SourceKind::kCat;
  spec.source.d = d;
  spec.source.q_f = q_f;
  spec.elements = {DetectorFilter{q_d, d}};
  spec.planes = std::move(planes);
  return spec;
}

ScenarioSpec delayed_choice_spec(double K, double p0, double d, double q_f,
                                 std::vector<double> planes, GridSpec grid) {
  ScenarioSpec spec;
  spec.grid = grid;
  spec.source.kind = SourceKind::kLensOutput;
  spec.source.K = K;
  spec.source.p0 = p0;
  spec.source.d = d;
  spec.source.q_f = q_f;
  spec.planes = std::move(planes);
  return spec;
}

ScenarioResult run_double_slit(double q_i, double d, double q_f, double delta,
                               std::vector<double> planes, GridSpec grid) {
  return run_scenario(double_slit_spec(q_i, d, q_f, delta, std::move(planes), grid));
}

ScenarioResult run_detector_filter(double q_d, double d, double q_f, std::vector<double> planes,
                                   GridSpec grid) {
  return run_scenario(detector_filter_spec(q_d, d, q_f, std::move(planes), grid));
}

ScenarioResult run_delayed_choice(double K, double p0, double d, double q_f,
                                  std::vector<double> planes, GridSpec grid) {
  return run_scenario(delayed_choice_spec(K, p0, d, q_f, std::move(planes), grid));
}

}  // namespace phasefilter
