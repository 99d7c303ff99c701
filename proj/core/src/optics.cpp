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

#include "phasefilter/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "correlation.hpp"
#include "phasefilter/errors.hpp"

namespace phasefilter {

namespace {

constexpr double kLeakageWarning = 1e-10;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
}

}  // namespace

void validate_element(const Element& element) {
  std::visit(
      [](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, FreeSpace>) {
          require_finite(e.tau, "free tau");
        } else if constexpr (std::is_same_v<T, Lens>) {
          require_positive(e.K, "lens K");
        } else if constexpr (std::is_same_v<T, Tilt>) {
          require_finite(e.p0, "tilt p0");
        } else if constexpr (std::is_same_v<T, FilterElement>) {
          e.filter.validate();
        } else {
          require_positive(e.q_d, "detector q_d");
          require_finite(e.q_d, "detector q_d");
          require_finite(e.center, "detector center");
        }
      },
      element);
}

PositionWavefunction free_propagate(const PositionWavefunction& psi, double tau,
                                    EdgePolicy policy) {
  require_finite(tau, "tau");
  if (tau == 0.0) return psi;
  MomentumWavefunction phi = fourier_transform(psi);
  const MomentumGrid lat = phi.lattice();
  const double hbar = psi.grid.hbar();
  for (std::size_t k = 0; k < phi.amp.size(); ++k) {
    const double p = lat.p(k);
    phi.amp[k] *= std::polar(1.0, -tau * p * p / (2.0 * hbar));
  }
  PositionWavefunction out = inverse_fourier_transform(phi);
  if (policy == EdgePolicy::kReject) {
    check_edges(out, kPropagationEdgeTolerance, "free_propagate");
  }
  return out;
}

WignerMap shear_wigner(const WignerMap& w, double tau) {
  require_finite(tau, "tau");
  if (tau == 0.0) return w;
  const MomentumGrid lat = w.p_lattice();
  WignerMap out = detail::shift_columns_q(w, [&](std::size_t k) { return tau * lat.p(k); });
  const std::vector<double> mq = marginal_q(out);
  const double peak = *std::max_element(mq.begin(), mq.end());
  const double edge = std::max(std::abs(mq.front()), std::abs(mq.back()));
  const double tol = kPropagationEdgeTolerance * kPropagationEdgeTolerance;
  if (edge > tol * peak) {
    throw ClippingError("shear_wigner: sheared map reaches the grid edge; enlarge the grid extent");
  }
  return out;
}

PositionWavefunction thin_lens(const PositionWavefunction& psi, double K) {
  require_positive(K, "K");
  if (std::isinf(K)) return psi;
  PositionWavefunction out = psi;
  for (std::size_t j = 0; j < out.amp.size(); ++j) {
    const double q = psi.grid.q(j);
    out.amp[j] *= std::polar(1.0, -q * q / (K * K));
  }
  return out;
}

WignerMap thin_lens_wigner(const WignerMap& w, double K) {
  require_positive(K, "K");
  if (std::isinf(K)) return w;
  const SpatialGrid& g = w.grid();
  return detail::shift_rows_p(w, [&](std::size_t j) { return -2.0 * g.hbar() * g.q(j) / (K * K); });
}

TiltResult tilt(const PositionWavefunction& psi, double p0) {
  require_finite(p0, "p0");
  PositionWavefunction out = psi;
  if (p0 != 0.0) {
    for (std::size_t j = 0; j < out.amp.size(); ++j) {
      out.amp[j] *= std::polar(1.0, p0 * psi.grid.q(j) / psi.grid.hbar());
    }
  }
  const double leak = band_limit_leakage(out);
  return TiltResult{std::move(out), leak, leak > kLeakageWarning};
}

ElementOutput apply_element(const PositionWavefunction& psi, const Element& element) {
  validate_element(element);
  return std::visit(
      [&](const auto& e) -> ElementOutput {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, FreeSpace>) {
          return ElementOutput{free_propagate(psi, e.tau)};
        } else if constexpr (std::is_same_v<T, Lens>) {
          return ElementOutput{thin_lens(psi, e.K)};
        } else if constexpr (std::is_same_v<T, Tilt>) {
          TiltResult t = tilt(psi, e.p0);
          return ElementOutput{std::move(t.state), 1.0, 1.0, t.band_limit_warning};
        } else {
          PositionFilterOutput f =
              [&] {
                if constexpr (std::is_same_v<T, FilterElement>) {
                  return apply_filter(psi, e.filter);
                } else {
                  return apply_position_filter(
                      psi, detector_transmittance(psi.grid, e.q_d, e.center));
                }
              }();
          return ElementOutput{std::move(f.state_raw), f.passed_fraction,
                               f.peak_normalized_fraction, f.blocked()};
        }
      },
      element);
}

}  // namespace phasefilter
