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

#include "phasefilter/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phasefilter/errors.hpp"

namespace phasefilter {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeTolerance = 1e-9;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || std::isnan(v)) {
    throw InvalidArgument(std::string(name) + " must be positive");
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be finite");
}

double sum_abs2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

PositionWavefunction sampled(const SpatialGrid& grid, auto&& f) {
  PositionWavefunction out{grid, std::vector<Complex>(grid.size())};
  for (std::size_t j = 0; j < grid.size(); ++j) out.amp[j] = f(grid.q(j));
  return out;
}

}  // namespace

double PositionWavefunction::norm2() const { return sum_abs2(amp) * grid.dq(); }

PositionWavefunction PositionWavefunction::scaled(Complex factor) const {
  PositionWavefunction out = *this;
  for (auto& z : out.amp) z *= factor;
  return out;
}

PositionWavefunction PositionWavefunction::normalized() const {
  const double n2 = norm2();
  if (!(n2 > 0.0)) throw InvalidArgument("cannot normalize the zero state");
  return scaled(1.0 / std::sqrt(n2));
}

double MomentumWavefunction::norm2() const { return sum_abs2(amp) * lattice().spacing(); }

MomentumWavefunction MomentumWavefunction::scaled(Complex factor) const {
  MomentumWavefunction out = *this;
  for (auto& z : out.amp) z *= factor;
  return out;
}

MomentumWavefunction MomentumWavefunction::normalized() const {
  const double n2 = norm2();
  if (!(n2 > 0.0)) throw InvalidArgument("cannot normalize the zero state");
  return scaled(1.0 / std::sqrt(n2));
}

Complex inner_product(const PositionWavefunction& a, const PositionWavefunction& b) {
  require_same_grid(a.grid, b.grid, "inner_product");
  Complex s{0.0, 0.0};
  for (std::size_t j = 0; j < a.amp.size(); ++j) s += std::conj(a.amp[j]) * b.amp[j];
  return s * a.grid.dq();
}

double fidelity(const PositionWavefunction& a, const PositionWavefunction& b) {
  const double na = a.norm2();
  const double nb = b.norm2();
  if (!(na > 0.0) || !(nb > 0.0)) throw InvalidArgument("fidelity of a zero state");
  return std::norm(inner_product(a, b)) / (na * nb);
}

void SlitParams::validate() const {
  require_positive(d, "d");
  require_positive(q_f, "q_f");
  require_positive(q_i, "q_i");
  require_positive(q_d, "q_d");
  require_finite(delta, "delta");
}

void check_edges(const PositionWavefunction& psi, double rel_tol, const char* what) {
  double peak = 0.0;
  for (const auto& z : psi.amp) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return;
  const double edge = std::max(std::abs(psi.amp.front()), std::abs(psi.amp.back()));
  if (edge > rel_tol * peak) {
    throw ClippingError(std::string(what) + ": edge amplitude " + std::to_string(edge / peak) +
                        " of peak exceeds " + std::to_string(rel_tol) +
                        "; enlarge the grid extent (keep dq fixed by raising n)");
  }
}

PositionWavefunction gaussian_state(const SpatialGrid& grid, double center, double width,
                                    double p0, double chirp, EdgePolicy policy) {
  require_positive(width, "width");
  require_finite(center, "center");
  require_finite(p0, "p0");
  require_finite(chirp, "chirp");
  const double norm = std::pow(kPi * width * width, -0.25);
  const double hbar = grid.hbar();
  auto psi = sampled(grid, [&](double q) {
    const double x = q - center;
    return norm * std::exp(-x * x / (2.0 * width * width)) *
           std::polar(1.0, p0 * q / hbar + chirp * q * q);
  });
  if (policy == EdgePolicy::kReject) check_edges(psi, kEdgeTolerance, "gaussian_state");
  return psi;
}

PositionWavefunction TwoLobeState::sum() const {
  require_same_grid(plus.grid, minus.grid, "TwoLobeState::sum");
  PositionWavefunction out = plus;
  for (std::size_t j = 0; j < out.amp.size(); ++j) out.amp[j] += minus.amp[j];
  return out;
}

TwoLobeState double_slit_lobes(const SpatialGrid& grid, double d, double q_f, EdgePolicy policy) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidArgument("d must be non-negative");
  require_positive(q_f, "q_f");
  const double n = std::pow(4.0 * kPi * q_f * q_f, -0.25) /
                   std::sqrt(1.0 + std::exp(-d * d / (q_f * q_f)));
  auto lobe = [&](double c) {
    return sampled(grid, [&](double q) {
      const double x = q - c;
      return Complex{n * std::exp(-x * x / (2.0 * q_f * q_f)), 0.0};
    });
  };
  TwoLobeState out{lobe(d), lobe(-d)};
  if (policy == EdgePolicy::kReject) check_edges(out.sum(), kEdgeTolerance, "double_slit_state");
  return out;
}

PositionWavefunction double_slit_state(const SpatialGrid& grid, double d, double q_f) {
  return double_slit_lobes(grid, d, q_f).sum();
}

PositionWavefunction hermite_gauss_state(const SpatialGrid& grid, int order, double width) {
  require_positive(width, "width");
  if (order < 0 || order > 20) {
    throw InvalidArgument("hermite order must be in [0, 20], got " + std::to_string(order));
  }
  // Classical turning momentum sqrt(2n+1) hbar/w plus a Gaussian tail margin.
  const double p_needed = (std::sqrt(2.0 * order + 1.0) + 6.0) * grid.hbar() / width;
  if (p_needed > grid.band_limit()) {
    throw InvalidArgument("hermite order " + std::to_string(order) +
                          " needs |p| up to " + std::to_string(p_needed) +
                          " but the grid resolves only " + std::to_string(grid.band_limit()) +
                          "; decrease dq");
  }
  const double c0 = std::pow(kPi * width * width, -0.25);
  auto psi = sampled(grid, [&](double q) {
    const double x = (q - grid.q_center()) / width;
    double prev = 0.0;
    double cur = c0 * std::exp(-0.5 * x * x);
    for (int k = 0; k < order; ++k) {
      const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
    return Complex{cur, 0.0};
  });
  check_edges(psi, kEdgeTolerance, "hermite_gauss_state");
  return psi.normalized();
}

PositionWavefunction build_superposition(std::span<const Complex> coeffs,
                                         std::span<const PositionWavefunction> states) {
  if (coeffs.size() != states.size() || states.empty()) {
    throw InvalidArgument("build_superposition needs one coefficient per state");
  }
  PositionWavefunction out{states.front().grid,
                           std::vector<Complex>(states.front().amp.size(), Complex{})};
  for (std::size_t i = 0; i < states.size(); ++i) {
    require_same_grid(out.grid, states[i].grid, "build_superposition");
    for (std::size_t j = 0; j < out.amp.size(); ++j) out.amp[j] += coeffs[i] * states[i].amp[j];
  }
  return out;
}

TwoLobeState lens_output_lobes(const SpatialGrid& grid, double d, double q_f, double K,
                               double p0) {
  require_positive(d, "d");
  require_positive(q_f, "q_f");
  require_positive(K, "K");
  require_finite(p0, "p0");
  const double hbar = grid.hbar();
  // The lens phase is used as printed, exp(-i q^2/K^2); the tilt carries 1/hbar.
  auto lobe = [&](double c, double tilt) {
    return sampled(grid, [&](double q) {
      const double x = q - c;
      const double lens = std::isinf(K) ? 0.0 : -q * q / (K * K);
      return std::exp(-x * x / (q_f * q_f)) * std::polar(1.0, lens + tilt * q / hbar);
    });
  };
  TwoLobeState out{lobe(d, -p0), lobe(-d, p0)};
  const PositionWavefunction total = out.sum();
  check_edges(total, kEdgeTolerance, "lens_output_state");
  const double scale = 1.0 / std::sqrt(total.norm2());
  out.plus = out.plus.scaled(scale);
  out.minus = out.minus.scaled(scale);
  return out;
}

PositionWavefunction lens_output_state(const SpatialGrid& grid, double d, double q_f, double K,
                                       double p0) {
  return lens_output_lobes(grid, d, q_f, K, p0).sum();
}

PositionWavefunction detector_transmittance(const SpatialGrid& grid, double q_d, double center) {
  return gaussian_state(grid, center, q_d, 0.0, 0.0, EdgePolicy::kAllow);
}

double analytic_gaussian_wdf(double q, double p, double q_i, double hbar) {
  const double h = 2.0 * kPi * hbar;
  return (2.0 / h) * std::exp(-q * q / (q_i * q_i) - p * p * q_i * q_i / (hbar * hbar));
}

SlitWdfTerms analytic_slit_wdf(double q, double p, double d, double q_f, double hbar) {
  const double h = 2.0 * kPi * hbar;
  const double qf2 = q_f * q_f;
  const double pre = std::exp(-p * p * qf2 / (hbar * hbar)) / (h * (1.0 + std::exp(-d * d / qf2)));
  SlitWdfTerms t;
  t.w_plus = pre * std::exp(-(q - d) * (q - d) / qf2);
  t.w_minus = pre * std::exp(-(q + d) * (q + d) / qf2);
  t.w_int = pre * 2.0 * std::exp(-q * q / qf2) * std::cos(2.0 * d * p / hbar);
  t.total = t.w_plus + t.w_minus + t.w_int;
  return t;
}

double interference_attenuation(const SlitParams& s) {
  return std::exp(-s.d * s.d / (s.q_f * s.q_f + s.q_i * s.q_i));
}

double analytic_filtered_wdf(double q, double p, const SlitParams& s, double hbar) {
  const double h = 2.0 * kPi * hbar;
  const double qf2 = s.q_f * s.q_f;
  const double qi2 = s.q_i * s.q_i;
  const double K = 1.0 / (h * (1.0 + std::exp(-s.d * s.d / qf2)) * std::sqrt(kPi * (qi2 + qf2)));
  const double envelope = std::exp(-(q - s.delta) * (q - s.delta) / qi2) *
                          std::exp(-(p * p / (hbar * hbar)) * qf2 * qi2 / (qf2 + qi2));
  const double fringe_scale = qi2 / (qf2 + qi2);
  const double bracket = std::exp(-(q - s.d) * (q - s.d) / qf2) +
                         std::exp(-(q + s.d) * (q + s.d) / qf2) +
                         2.0 * std::exp(-q * q / qf2) * interference_attenuation(s) *
                             std::cos(2.0 * s.d * p / hbar * fringe_scale);
  return K * envelope * bracket;
}

}  // namespace phasefilter
