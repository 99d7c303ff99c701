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

// Free-space propagation and thin optical elements on both pictures.

#ifndef PHASEFILTER_OPTICS_HPP_
#define PHASEFILTER_OPTICS_HPP_

#include <variant>

#include "phasefilter/filters.hpp"
#include "phasefilter/states.hpp"
#include "phasefilter/wigner.hpp"

namespace phasefilter {

struct FreeSpace {
  double tau = 0.0;

  friend bool operator==(const FreeSpace&, const FreeSpace&) = default;
};
struct Lens {
  double K = 1.0;

  friend bool operator==(const Lens&, const Lens&) = default;
};
struct Tilt {
  double p0 = 0.0;

  friend bool operator==(const Tilt&, const Tilt&) = default;
};
struct FilterElement {
  FilterSpec filter;
};
/// Gaussian detector transmittance of width q_d centered at `center`.
struct DetectorFilter {
  double q_d = 1.0;
  double center = 0.0;

  friend bool operator==(const DetectorFilter&, const DetectorFilter&) = default;
};

using Element = std::variant<FreeSpace, Lens, Tilt, FilterElement, DetectorFilter>;

/// Throws InvalidArgument for non-finite parameters, K <= 0 or q_d <= 0.
void validate_element(const Element& element);

/// Edge amplitude allowed after propagation, relative to the peak.
inline constexpr double kPropagationEdgeTolerance = 1e-6;

/// Multiplies Phi(p) by exp(-i tau p^2 / (2 hbar)). Under kReject, throws
/// ClippingError when the result reaches the grid boundary.
PositionWavefunction free_propagate(const PositionWavefunction& psi, double tau,
                                    EdgePolicy policy = EdgePolicy::kReject);

/// W'(q, p) = W(q - tau p, p), column by column.
WignerMap shear_wigner(const WignerMap& w, double tau);

/// psi(q) exp(-i q^2 / K^2); an infinite K leaves the state untouched.
PositionWavefunction thin_lens(const PositionWavefunction& psi, double K);
/// Lens in phase space: W'(q, p) = W(q, p + 2 hbar q / K^2).
WignerMap thin_lens_wigner(const WignerMap& w, double K);

struct TiltResult {
  PositionWavefunction state;
  /// Spectral power fraction at or beyond the band limit.
  double leakage = 0.0;
  bool band_limit_warning = false;
};

/// psi(q) exp(i p0 q / hbar).
TiltResult tilt(const PositionWavefunction& psi, double p0);

struct ElementOutput {
  PositionWavefunction state;
  /// Fraction of the input norm that survives (1 for unitary elements).
  double passed_fraction = 1.0;
  /// Same, relative to the largest gain of the transmittance.
  double peak_normalized_fraction = 1.0;
  bool warning = false;
};

/// Applies one element. Filters return their raw (unnormalized) output.
ElementOutput apply_element(const PositionWavefunction& psi, const Element& element);

}  // namespace phasefilter

#endif  // PHASEFILTER_OPTICS_HPP_
