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

// Filtering in the wavefunction and phase-space pictures, detection
// smoothing, interference bookkeeping and fringe visibility.

#ifndef PHASEFILTER_FILTERS_HPP_
#define PHASEFILTER_FILTERS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "phasefilter/states.hpp"
#include "phasefilter/wigner.hpp"

namespace phasefilter {

enum class FilterForm { kPosition, kMomentum, kGeneralPosition, kGeneralMomentum };

/// A transmittance and, for the general forms, its offset (p_0 for
/// kGeneralPosition, q_0 for kGeneralMomentum).
struct FilterSpec {
  FilterForm form = FilterForm::kPosition;
  std::variant<PositionWavefunction, MomentumWavefunction> transmittance;
  double offset = 0.0;

  /// Throws InvalidArgument when the transmittance kind does not fit the
  /// form, a value is non-finite, or an offset is given to a plain form.
  void validate() const;
};

template <class State>
struct FilteredOutput {
  State state_raw;
  /// Unit-norm copy; empty when the filter blocked everything.
  std::optional<State> state_renorm;
  /// norm2(raw) / norm2(input).
  double passed_fraction = 0.0;
  /// passed_fraction over the largest attainable gain of the transmittance
  /// (sup|t|^2 for multiplicative forms). Lies in [0, 1].
  double peak_normalized_fraction = 0.0;

  bool blocked() const noexcept { return !state_renorm.has_value(); }
};

using PositionFilterOutput = FilteredOutput<PositionWavefunction>;
using MomentumFilterOutput = FilteredOutput<MomentumWavefunction>;

/// psi_out(q) = psi_in(q) psi_f(q).
PositionFilterOutput apply_position_filter(const PositionWavefunction& psi_in,
                                           const PositionWavefunction& psi_f);
/// Phase-space image of the position filter: multiplication along q,
/// convolution along p.
WignerMap filter_phase_space_position(const WignerMap& w_in, const WignerMap& w_f);

/// Phi_out(p) = Phi_in(p) Phi_f(p).
MomentumFilterOutput apply_momentum_filter(const MomentumWavefunction& phi_in,
                                           const MomentumWavefunction& phi_f);
/// Multiplication along p, linear convolution along q.
WignerMap filter_phase_space_momentum(const WignerMap& w_in, const WignerMap& w_f);

/// psi_out(q) = h^{-1/2} sum_q' psi_in(q') psi_f(q - q') exp(i p0 q' / hbar) dq.
/// The grid center must be a multiple of dq.
PositionFilterOutput general_filter_position(const PositionWavefunction& psi_in,
                                             const PositionWavefunction& psi_f, double p0);
/// W_out(q, p) = sum_q' W_in(q', p - p0) W_f(q - q', p) dq.
WignerMap general_filter_position_phase_space(const WignerMap& w_in, const WignerMap& w_f,
                                              double p0);

/// Phi_out(p) = h^{-1/2} sum_p' Phi_in(p') Phi_f(p - p') exp(-i q0 p' / hbar) dp.
MomentumFilterOutput general_filter_momentum(const MomentumWavefunction& phi_in,
                                             const MomentumWavefunction& phi_f, double q0);
/// W_out(q, p) = sum_p' W_in(q - q0, p') W_f(q, p - p') dp.
WignerMap general_filter_momentum_phase_space(const WignerMap& w_in, const WignerMap& w_f,
                                              double q0);

/// Any filter form applied to a position-space state; momentum forms go
/// through the Fourier lattice and come back.
PositionFilterOutput apply_filter(const PositionWavefunction& psi_in, const FilterSpec& filter);

/// Full 2-D convolution sum W_in(q', p') W_d(q - q', p - p') dq dp.
WignerMap detect(const WignerMap& w_in, const WignerMap& w_d);
/// The same map from amplitudes:
/// h^{-1} |sum_q' psi_in(q') conj(psi_d(q - q')) exp(-i p q' / hbar) dq|^2.
WignerMap detect_from_states(const PositionWavefunction& psi_in,
                             const PositionWavefunction& psi_d);

struct InterferenceSplit {
  WignerMap auto_terms;
  WignerMap interference;
};

/// auto_terms = sum of parts; interference = total - auto_terms.
InterferenceSplit split_interference(const WignerMap& total, std::span<const WignerMap> parts);

/// Half-open index range [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct Visibility {
  double value = 0.0;
  /// Set when the window holds fewer than two maxima; value is then 0.
  bool degenerate = false;
};

/// (I_max - I_min) / (I_max + I_min). I_max is the largest interior maximum;
/// I_min is the smallest sample between the maxima bracketing it.
Visibility fringe_visibility(std::span<const double> intensity, IndexRange window);

/// Contiguous run around the envelope maximum where the envelope stays at or
/// above `fraction` of that maximum.
IndexRange envelope_window(std::span<const double> envelope, double fraction = 0.1);

}  // namespace phasefilter

#endif  // PHASEFILTER_FILTERS_HPP_
