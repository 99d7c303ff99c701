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

#include "phasefilter/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "correlation.hpp"
#include "fft.hpp"
#include "phasefilter/errors.hpp"

namespace phasefilter {

namespace {

using detail::cplx;

template <class State>
FilteredOutput<State> make_output(State raw, double in_norm2, double gain_bound) {
  if (!(in_norm2 > 0.0)) throw InvalidArgument("filter: input state has zero norm");
  FilteredOutput<State> out{std::move(raw), std::nullopt, 0.0, 0.0};
  const double raw_norm2 = out.state_raw.norm2();
  out.passed_fraction = raw_norm2 / in_norm2;
  out.peak_normalized_fraction = gain_bound > 0.0 ? out.passed_fraction / gain_bound : 0.0;
  if (raw_norm2 > 0.0) out.state_renorm = out.state_raw.normalized();
  return out;
}

double sup_norm2(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::norm(z));
  return m;
}

double l1_norm(const std::vector<Complex>& v, double step) {
  double s = 0.0;
  for (const auto& z : v) s += std::abs(z);
  return s * step;
}

std::vector<cplx> as_complex(std::span<const double> v) {
  return std::vector<cplx>(v.begin(), v.end());
}

WignerMap real_map(const SpatialGrid& g, const std::vector<cplx>& v, double scale) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = scale * v[i].real();
  return WignerMap(g, std::move(out));
}

long kernel_shift(const SpatialGrid& g) {
  return static_cast<long>(g.size() / 2) - g.center_offset();
}

WignerMap correlation_product(const WignerMap& a, const WignerMap& b, const char* what) {
  std::vector<cplx> ca = detail::to_correlation(a);
  const std::vector<cplx> cb = detail::to_correlation(b);
  for (std::size_t i = 0; i < ca.size(); ++i) ca[i] *= cb[i];
  return detail::from_correlation(a.grid(), std::move(ca), what);
}

WignerMap shift_q(const WignerMap& w, double q0) {
  const double steps = q0 / w.dq();
  const double whole = std::round(steps);
  if (std::abs(steps - whole) > 1e-12) {
    return detail::shift_columns_q(w, [q0](std::size_t) { return q0; });
  }
  const long m = static_cast<long>(whole);
  const long n = static_cast<long>(w.size());
  std::vector<double> out(w.values().size(), 0.0);
  for (long j = 0; j < n; ++j) {
    const long src = j - m;
    if (src < 0 || src >= n) continue;
    const auto r = w.row(static_cast<std::size_t>(src));
    std::copy(r.begin(), r.end(), out.begin() + j * n);
  }
  return WignerMap(w.grid(), std::move(out));
}

WignerMap convolve_q(const WignerMap& a, const WignerMap& b) {
  const std::size_t n = a.size();
  const auto conv = detail::convolve_columns(as_complex(a.values()), as_complex(b.values()), n, n,
                                             kernel_shift(a.grid()));
  return real_map(a.grid(), conv, a.dq());
}

}  // namespace

void FilterSpec::validate() const {
  const bool wants_position = form == FilterForm::kPosition || form == FilterForm::kGeneralPosition;
  const std::vector<Complex>* amp = nullptr;
  if (wants_position) {
    const auto* t = std::get_if<PositionWavefunction>(&transmittance);
    if (t == nullptr) throw InvalidArgument("filter: position forms need a position transmittance");
    amp = &t->amp;
  } else {
    const auto* t = std::get_if<MomentumWavefunction>(&transmittance);
    if (t == nullptr) throw InvalidArgument("filter: momentum forms need a momentum transmittance");
    amp = &t->amp;
  }
  for (const auto& z : *amp) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("filter: transmittance has non-finite values");
    }
  }
  if (!std::isfinite(offset)) throw InvalidArgument("filter: offset must be finite");
  const bool general = form == FilterForm::kGeneralPosition || form == FilterForm::kGeneralMomentum;
  if (!general && offset != 0.0) {
    throw InvalidArgument("filter: offset is only meaningful for the general forms");
  }
}

PositionFilterOutput apply_position_filter(const PositionWavefunction& psi_in,
                                           const PositionWavefunction& psi_f) {
  require_same_grid(psi_in.grid, psi_f.grid, "apply_position_filter");
  std::vector<Complex> amp(psi_in.amp.size());
  for (std::size_t j = 0; j < amp.size(); ++j) amp[j] = psi_in.amp[j] * psi_f.amp[j];
  return make_output(PositionWavefunction{psi_in.grid, std::move(amp)}, psi_in.norm2(),
                     sup_norm2(psi_f.amp));
}

WignerMap filter_phase_space_position(const WignerMap& w_in, const WignerMap& w_f) {
  require_same_grid(w_in.grid(), w_f.grid(), "filter_phase_space_position");
  return correlation_product(w_in, w_f, "filter_phase_space_position");
}

MomentumFilterOutput apply_momentum_filter(const MomentumWavefunction& phi_in,
                                           const MomentumWavefunction& phi_f) {
  require_same_grid(phi_in.grid, phi_f.grid, "apply_momentum_filter");
  std::vector<Complex> amp(phi_in.amp.size());
  for (std::size_t k = 0; k < amp.size(); ++k) amp[k] = phi_in.amp[k] * phi_f.amp[k];
  return make_output(MomentumWavefunction{phi_in.grid, std::move(amp)}, phi_in.norm2(),
                     sup_norm2(phi_f.amp));
}

WignerMap filter_phase_space_momentum(const WignerMap& w_in, const WignerMap& w_f) {
  require_same_grid(w_in.grid(), w_f.grid(), "filter_phase_space_momentum");
  return convolve_q(w_in, w_f);
}

PositionFilterOutput general_filter_position(const PositionWavefunction& psi_in,
                                             const PositionWavefunction& psi_f, double p0) {
  require_same_grid(psi_in.grid, psi_f.grid, "general_filter_position");
  const SpatialGrid& g = psi_in.grid;
  const std::size_t n = g.size();
  std::vector<cplx> a(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = psi_in.amp[j] * std::polar(1.0, p0 * g.q(j) / g.hbar());
  }
  auto conv = detail::convolve_columns(a, psi_f.amp, n, 1, kernel_shift(g));
  const double scale = g.dq() / std::sqrt(g.h());
  for (auto& z : conv) z *= scale;
  const double gain = std::pow(l1_norm(psi_f.amp, g.dq()), 2) / g.h();
  return make_output(PositionWavefunction{g, std::move(conv)}, psi_in.norm2(), gain);
}

WignerMap general_filter_position_phase_space(const WignerMap& w_in, const WignerMap& w_f,
                                              double p0) {
  require_same_grid(w_in.grid(), w_f.grid(), "general_filter_position_phase_space");
  const WignerMap shifted =
      p0 == 0.0 ? w_in : detail::shift_rows_p(w_in, [p0](std::size_t) { return p0; });
  return convolve_q(shifted, w_f);
}

MomentumFilterOutput general_filter_momentum(const MomentumWavefunction& phi_in,
                                             const MomentumWavefunction& phi_f, double q0) {
  require_same_grid(phi_in.grid, phi_f.grid, "general_filter_momentum");
  const SpatialGrid& g = phi_in.grid;
  const MomentumGrid lat = g.fourier_lattice();
  const std::size_t n = g.size();
  std::vector<cplx> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = phi_in.amp[k] * std::polar(1.0, -q0 * lat.p(k) / g.hbar());
  }
  auto conv = detail::convolve_columns(a, phi_f.amp, n, 1, static_cast<long>(n / 2));
  const double scale = lat.spacing() / std::sqrt(g.h());
  for (auto& z : conv) z *= scale;
  const double gain = std::pow(l1_norm(phi_f.amp, lat.spacing()), 2) / g.h();
  return make_output(MomentumWavefunction{g, std::move(conv)}, phi_in.norm2(), gain);
}

WignerMap general_filter_momentum_phase_space(const WignerMap& w_in, const WignerMap& w_f,
                                              double q0) {
  require_same_grid(w_in.grid(), w_f.grid(), "general_filter_momentum_phase_space");
  const WignerMap shifted = q0 == 0.0 ? w_in : shift_q(w_in, q0);
  return correlation_product(shifted, w_f, "general_filter_momentum_phase_space");
}

PositionFilterOutput apply_filter(const PositionWavefunction& psi_in, const FilterSpec& filter) {
  filter.validate();
  auto back = [&](const MomentumFilterOutput& m) {
    PositionWavefunction raw = inverse_fourier_transform(m.state_raw);
    PositionFilterOutput out{std::move(raw), std::nullopt, m.passed_fraction,
                             m.peak_normalized_fraction};
    if (m.state_renorm) out.state_renorm = inverse_fourier_transform(*m.state_renorm);
    return out;
  };
  switch (filter.form) {
    case FilterForm::kPosition:
      return apply_position_filter(psi_in, std::get<PositionWavefunction>(filter.transmittance));
    case FilterForm::kGeneralPosition:
      return general_filter_position(psi_in, std::get<PositionWavefunction>(filter.transmittance),
                                     filter.offset);
    case FilterForm::kMomentum:
      return back(apply_momentum_filter(fourier_transform(psi_in),
                                        std::get<MomentumWavefunction>(filter.transmittance)));
    case FilterForm::kGeneralMomentum:
      return back(general_filter_momentum(fourier_transform(psi_in),
                                          std::get<MomentumWavefunction>(filter.transmittance),
                                          filter.offset));
  }
  throw InvalidArgument("apply_filter: unknown filter form");
}

WignerMap detect(const WignerMap& w_in, const WignerMap& w_d) {
  require_same_grid(w_in.grid(), w_d.grid(), "detect");
  const std::size_t n = w_in.size();
  // The p-convolution is a product in the correlation domain, the
  // q-convolution a linear convolution at every lag.
  auto conv = detail::convolve_columns(detail::to_correlation(w_in), detail::to_correlation(w_d),
                                       n, n, kernel_shift(w_in.grid()));
  for (auto& z : conv) z *= w_in.dq();
  return detail::from_correlation(w_in.grid(), std::move(conv), "detect");
}

WignerMap detect_from_states(const PositionWavefunction& psi_in,
                             const PositionWavefunction& psi_d) {
  require_same_grid(psi_in.grid, psi_d.grid, "detect_from_states");
  const SpatialGrid& g = psi_in.grid;
  const std::size_t n = g.size();
  const long nl = static_cast<long>(n);
  const long shift = kernel_shift(g);
  const long half = nl / 2;
  std::vector<double> out(n * n);
  std::vector<cplx> gj(n);
  for (long j = 0; j < nl; ++j) {
    for (long jp = 0; jp < nl; ++jp) {
      const long m = j - jp + shift;
      gj[static_cast<std::size_t>(jp)] =
          (m < 0 || m >= nl) ? cplx{0.0, 0.0}
                             : psi_in.amp[static_cast<std::size_t>(jp)] *
                                   std::conj(psi_d.amp[static_cast<std::size_t>(m)]);
    }
    const auto x = detail::centered_dft(gj, half, 2 * n, detail::Direction::kForward);
    for (std::size_t k = 0; k < n; ++k) {
      out[static_cast<std::size_t>(j) * n + k] =
          std::norm(g.dq() * x[k + n / 2]) / g.h();
    }
  }
  return WignerMap(g, std::move(out));
}

InterferenceSplit split_interference(const WignerMap& total, std::span<const WignerMap> parts) {
  WignerMap auto_terms(total.grid());
  auto& acc = auto_terms.mutable_values();
  for (const auto& part : parts) {
    require_same_grid(total.grid(), part.grid(), "split_interference");
    const auto v = part.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  std::vector<double> rest(acc.size());
  const auto t = total.values();
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = t[i] - acc[i];
  return InterferenceSplit{std::move(auto_terms), WignerMap(total.grid(), std::move(rest))};
}

Visibility fringe_visibility(std::span<const double> intensity, IndexRange window) {
  if (window.size() == 0 || window.end > intensity.size()) {
    throw InvalidArgument("fringe_visibility: window is empty or exceeds the data");
  }
  const auto first = intensity.begin() + static_cast<long>(window.begin);
  const auto last = intensity.begin() + static_cast<long>(window.end);
  if (!(*std::max_element(first, last) > 1e-9)) {
    throw InvalidArgument("fringe_visibility: intensity in the window is negligible");
  }

  std::vector<std::size_t> peaks;
  for (std::size_t i = window.begin + 1; i + 1 < window.end; ++i) {
    if (intensity[i] > intensity[i - 1] && intensity[i] >= intensity[i + 1]) peaks.push_back(i);
  }
  if (peaks.size() < 2) return Visibility{0.0, true};

  std::size_t top = 0;
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    if (intensity[peaks[i]] > intensity[peaks[top]]) top = i;
  }
  const std::size_t lo = top > 0 ? peaks[top - 1] : peaks[top];
  const std::size_t hi = top + 1 < peaks.size() ? peaks[top + 1] : peaks[top];
  const double i_max = intensity[peaks[top]];
  const double i_min = std::max(0.0, *std::min_element(intensity.begin() + static_cast<long>(lo),
                                                       intensity.begin() + static_cast<long>(hi) + 1));
  return Visibility{(i_max - i_min) / (i_max + i_min), false};
}

IndexRange envelope_window(std::span<const double> envelope, double fraction) {
  if (envelope.empty()) throw InvalidArgument("envelope_window: empty envelope");
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InvalidArgument("envelope_window: fraction must lie in (0, 1)");
  }
  const auto top = static_cast<std::size_t>(std::max_element(envelope.begin(), envelope.end()) -
                                            envelope.begin());
  const double cut = fraction * envelope[top];
  std::size_t b = top;
  while (b > 0 && envelope[b - 1] >= cut) --b;
  std::size_t e = top + 1;
  while (e < envelope.size() && envelope[e] >= cut) ++e;
  return IndexRange{b, e};
}

}  // namespace phasefilter
