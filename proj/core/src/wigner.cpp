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

#include "phasefilter/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "correlation.hpp"
#include "fft.hpp"
#include "phasefilter/errors.hpp"

namespace phasefilter {

namespace detail {

std::vector<cplx> correlation_of(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const std::size_t n = a.size();
  const long nl = static_cast<long>(n);
  std::vector<cplx> corr(n * n, cplx{0.0, 0.0});
  for (long j = 0; j < nl; ++j) {
    const long smax = std::min(j, nl - 1 - j);
    cplx* row = corr.data() + static_cast<std::size_t>(j) * n;
    for (long s = -smax; s <= smax; ++s) {
      row[wrap(s, n)] = std::conj(a[static_cast<std::size_t>(j - s)]) *
                        b[static_cast<std::size_t>(j + s)];
    }
  }
  return corr;
}

std::vector<cplx> transform_correlation(const SpatialGrid& grid, std::vector<cplx> corr) {
  const std::size_t n = grid.size();
  const double a = 2.0 * grid.dq() / grid.h();
  for (std::size_t j = 0; j < n; ++j) {
    // exp(-2 pi i (k - n/2) s / n) = (-1)^s exp(-2 pi i k s / n)
    for (std::size_t t = 1; t < n; t += 2) corr[j * n + t] = -corr[j * n + t];
  }
  dft_rows(corr, n, Direction::kForward);
  for (auto& z : corr) z *= a;
  return corr;
}

WignerMap from_correlation(const SpatialGrid& grid, std::vector<cplx> corr, const char* what) {
  std::vector<cplx> t = transform_correlation(grid, std::move(corr));
  std::vector<double> w(t.size());
  double peak = 0.0;
  double residue = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    w[i] = t[i].real();
    peak = std::max(peak, std::abs(w[i]));
    residue = std::max(residue, std::abs(t[i].imag()));
  }
  if (residue > 1e-9 * std::max(peak, std::numeric_limits<double>::min())) {
    throw AliasingError(std::string(what) + ": imaginary residue " + std::to_string(residue) +
                        " against peak " + std::to_string(peak));
  }
  return WignerMap(grid, std::move(w));
}

std::vector<cplx> to_correlation(const WignerMap& w) {
  const std::size_t n = w.size();
  const double inv = w.grid().h() / (2.0 * w.dq() * static_cast<double>(n));
  std::vector<cplx> corr(n * n);
  const auto v = w.values();
  for (std::size_t i = 0; i < corr.size(); ++i) corr[i] = cplx{v[i] * inv, 0.0};
  dft_rows(corr, n, Direction::kBackward);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t t = 1; t < n; t += 2) corr[j * n + t] = -corr[j * n + t];
  }
  return corr;
}

WignerMap shift_rows_p(const WignerMap& w, const std::function<double(std::size_t)>& shift) {
  const SpatialGrid& g = w.grid();
  const std::size_t n = g.size();
  std::vector<cplx> corr = to_correlation(w);
  for (std::size_t j = 0; j < n; ++j) {
    const double rate = 2.0 * shift(j) * g.dq() / g.hbar();
    if (rate == 0.0) continue;
    for (std::size_t t = 0; t < n; ++t) {
      const long s = (2 * t < n) ? static_cast<long>(t) : static_cast<long>(t) - static_cast<long>(n);
      corr[j * n + t] *= std::polar(1.0, rate * static_cast<double>(s));
    }
  }
  return from_correlation(g, std::move(corr), "shift_rows_p");
}

WignerMap shift_columns_q(const WignerMap& w, const std::function<double(std::size_t)>& shift) {
  const SpatialGrid& g = w.grid();
  const std::size_t n = g.size();
  const std::size_t L = 2 * n;
  std::vector<cplx> cols(n * L, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) cols[k * L + j] = w.at(j, k);
  }
  dft_rows(cols, L, Direction::kForward);
  const double inv = 1.0 / static_cast<double>(L);
  for (std::size_t k = 0; k < n; ++k) {
    const double delta = shift(k) / g.dq();
    cplx* c = cols.data() + k * L;
    for (std::size_t f = 0; f < L; ++f) {
      if (2 * f == L) {
        c[f] = 0.0;
        continue;
      }
      const double fs = (2 * f < L) ? static_cast<double>(f)
                                    : static_cast<double>(f) - static_cast<double>(L);
      c[f] *= std::polar(inv, -2.0 * std::numbers::pi * fs * delta / static_cast<double>(L));
    }
  }
  dft_rows(cols, L, Direction::kBackward);
  std::vector<double> out(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) out[j * n + k] = cols[k * L + j].real();
  }
  return WignerMap(g, std::move(out));
}

}  // namespace detail

namespace {

using detail::cplx;
using detail::Direction;

double hermitian_sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

WignerMap::WignerMap(SpatialGrid grid)
    : grid_(std::move(grid)), w_(grid_.size() * grid_.size(), 0.0) {}

WignerMap::WignerMap(SpatialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), w_(std::move(values)) {
  if (w_.size() != grid_.size() * grid_.size()) {
    throw InvalidArgument("WignerMap: value count does not match the grid");
  }
  for (double x : w_) {
    if (!std::isfinite(x)) throw InvalidArgument("WignerMap: non-finite value");
  }
}

double WignerMap::max() const { return *std::max_element(w_.begin(), w_.end()); }
double WignerMap::min() const { return *std::min_element(w_.begin(), w_.end()); }

CrossWignerMap::CrossWignerMap(SpatialGrid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), w_(std::move(values)) {
  if (w_.size() != grid_.size() * grid_.size()) {
    throw InvalidArgument("CrossWignerMap: value count does not match the grid");
  }
}

WignerMap CrossWignerMap::real_part() const {
  std::vector<double> re(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) re[i] = w_[i].real();
  return WignerMap(grid_, std::move(re));
}

double CrossWignerMap::max_imag() const {
  double m = 0.0;
  for (const auto& z : w_) m = std::max(m, std::abs(z.imag()));
  return m;
}

MomentumWavefunction fourier_transform(const PositionWavefunction& psi) {
  const SpatialGrid& g = psi.grid;
  const std::size_t n = g.size();
  const MomentumGrid lat = g.fourier_lattice();
  auto x = detail::centered_dft(psi.amp, static_cast<long>(n / 2), n, Direction::kForward);
  const double scale = g.dq() / std::sqrt(g.h());
  for (std::size_t k = 0; k < n; ++k) {
    x[k] *= scale * std::polar(1.0, -lat.p(k) * g.q_center() / g.hbar());
  }
  return MomentumWavefunction{g, std::move(x)};
}

PositionWavefunction inverse_fourier_transform(const MomentumWavefunction& phi) {
  const SpatialGrid& g = phi.grid;
  const std::size_t n = g.size();
  const MomentumGrid lat = g.fourier_lattice();
  std::vector<cplx> reduced(n);
  for (std::size_t k = 0; k < n; ++k) {
    reduced[k] = phi.amp[k] * std::polar(1.0, lat.p(k) * g.q_center() / g.hbar());
  }
  auto x = detail::centered_dft(reduced, static_cast<long>(n / 2), n, Direction::kBackward);
  const double scale = lat.spacing() / std::sqrt(g.h());
  for (auto& z : x) z *= scale;
  return PositionWavefunction{g, std::move(x)};
}

double band_limit_leakage(const PositionWavefunction& psi) {
  const MomentumWavefunction phi = fourier_transform(psi);
  const MomentumGrid lat = phi.lattice();
  const double limit = psi.grid.band_limit();
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t k = 0; k < phi.amp.size(); ++k) {
    const double a2 = std::norm(phi.amp[k]);
    total += a2;
    if (std::abs(lat.p(k)) >= limit) outside += a2;
  }
  return total > 0.0 ? outside / total : 0.0;
}

WignerMap wigner_from_position(const PositionWavefunction& psi) {
  return detail::from_correlation(psi.grid, detail::correlation_of(psi.amp, psi.amp),
                                  "wigner_from_position");
}

WignerMap wigner_from_position_direct(const PositionWavefunction& psi) {
  const SpatialGrid& g = psi.grid;
  const std::size_t n = g.size();
  const long nl = static_cast<long>(n);
  const double a = 2.0 * g.dq() / g.h();
  std::vector<double> w(n * n, 0.0);
  for (long j = 0; j < nl; ++j) {
    const long smax = std::min(j, nl - 1 - j);
    for (std::size_t k = 0; k < n; ++k) {
      const double kk = static_cast<double>(k) - static_cast<double>(n / 2);
      cplx acc{0.0, 0.0};
      for (long s = -smax; s <= smax; ++s) {
        const cplx c = std::conj(psi.amp[static_cast<std::size_t>(j - s)]) *
                       psi.amp[static_cast<std::size_t>(j + s)];
        acc += c * std::polar(1.0, -2.0 * std::numbers::pi * kk * static_cast<double>(s) /
                                       static_cast<double>(n));
      }
      w[static_cast<std::size_t>(j) * n + k] = a * acc.real();
    }
  }
  return WignerMap(g, std::move(w));
}

WignerMap wigner_from_momentum(const MomentumWavefunction& phi) {
  const SpatialGrid& g = phi.grid;
  const std::size_t n = g.size();
  const std::size_t n2 = 2 * n;
  const MomentumGrid lat = g.fourier_lattice();
  const long half = static_cast<long>(n / 2);

  // Strip the grid-center phase, recover the samples, and re-evaluate the
  // (trigonometric-polynomial) spectrum on the half-spacing lattice
  // p'_m = (m - n) * dp_w, m in [0, 2n), which covers one full period.
  std::vector<cplx> reduced(n);
  for (std::size_t k = 0; k < n; ++k) {
    reduced[k] = phi.amp[k] * std::polar(1.0, lat.p(k) * g.q_center() / g.hbar());
  }
  auto samples = detail::centered_dft(reduced, half, n, Direction::kBackward);
  for (auto& z : samples) z *= lat.spacing() / std::sqrt(g.h());
  auto fine = detail::centered_dft(samples, half, n2, Direction::kForward);
  for (auto& z : fine) z *= g.dq() / std::sqrt(g.h());

  // Column k of the map: correlate along p around p_k (fine index k + n/2),
  // fold the 2n lags onto n, and transform back to the q samples.
  const double dpw = g.wigner_lattice().spacing();
  std::vector<cplx> cols(n * n, cplx{0.0, 0.0});
  const long nl = static_cast<long>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long m0 = static_cast<long>(k) + half;
    cplx* col = cols.data() + k * n;
    for (long s = -nl; s < nl; ++s) {
      const cplx c = std::conj(fine[detail::wrap(m0 - s, n2)]) * fine[detail::wrap(m0 + s, n2)];
      col[detail::wrap(s, n)] += (s % 2 == 0) ? c : -c;
    }
  }
  detail::dft_rows(cols, n, Direction::kBackward);

  const double a = 2.0 * dpw / g.h();
  std::vector<double> w(n * n);
  double peak = 0.0;
  double residue = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = a * cols[k * n + j];
      w[j * n + k] = z.real();
      peak = std::max(peak, std::abs(z.real()));
      residue = std::max(residue, std::abs(z.imag()));
    }
  }
  if (residue > 1e-9 * std::max(peak, std::numeric_limits<double>::min())) {
    throw AliasingError("wigner_from_momentum: imaginary residue " + std::to_string(residue));
  }
  return WignerMap(g, std::move(w));
}

CrossWignerMap cross_wigner(const PositionWavefunction& psi_n, const PositionWavefunction& psi_m) {
  require_same_grid(psi_n.grid, psi_m.grid, "cross_wigner");
  auto t = detail::transform_correlation(psi_n.grid, detail::correlation_of(psi_n.amp, psi_m.amp));
  return CrossWignerMap(psi_n.grid, std::move(t));
}

std::vector<double> marginal_q(const WignerMap& w) {
  const std::size_t n = w.size();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = hermitian_sum(w.row(j)) * w.dp();
  return out;
}

std::vector<double> marginal_p(const WignerMap& w) {
  const std::size_t n = w.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = w.row(j);
    for (std::size_t k = 0; k < n; ++k) out[k] += r[k];
  }
  for (auto& x : out) x *= w.dq();
  return out;
}

double total_mass(const WignerMap& w) { return hermitian_sum(w.values()) * w.dq() * w.dp(); }

double overlap(const WignerMap& w1, const WignerMap& w2) {
  require_same_grid(w1.grid(), w2.grid(), "overlap");
  const auto a = w1.values();
  const auto b = w2.values();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return w1.grid().h() * s * w1.dq() * w1.dp();
}

Complex overlap(const CrossWignerMap& w1, const CrossWignerMap& w2) {
  require_same_grid(w1.grid(), w2.grid(), "overlap");
  const auto a = w1.values();
  const auto b = w2.values();
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  const SpatialGrid& g = w1.grid();
  return g.h() * s * g.dq() * g.wigner_lattice().spacing();
}

PositionWavefunction reconstruct_position(const WignerMap& w,
                                          std::optional<std::size_t> reference) {
  const SpatialGrid& g = w.grid();
  const std::size_t n = g.size();

  const double mass = total_mass(w);
  if (!(mass > 0.0)) throw InvalidArgument("reconstruct_position: map has no mass");
  const double purity = overlap(w, w) / (mass * mass);
  if (std::abs(purity - 1.0) > 1e-6) {
    throw InvalidArgument("reconstruct_position: map is not a pure state (purity " +
                          std::to_string(purity) + ")");
  }

  const std::vector<double> mq = marginal_q(w);
  const double peak = *std::max_element(mq.begin(), mq.end());
  const std::size_t r =
      reference ? *reference
                : static_cast<std::size_t>(std::max_element(mq.begin(), mq.end()) - mq.begin());
  if (r >= n) throw InvalidArgument("reconstruct_position: reference index out of range");
  if (!(mq[r] >= 1e-6 * peak)) {
    throw InvalidArgument("reconstruct_position: |psi(q_0)|^2 at the reference sample is " +
                          std::to_string(mq[r] / peak) + " of the peak; pick another reference");
  }

  // c_j[s] = psi*(j - s) psi(j + s). With j - s = r this yields psi(a) psi*(r)
  // for every a of the same parity as r.
  const std::vector<cplx> corr = detail::to_correlation(w);
  const double scale = 1.0 / std::sqrt(mq[r]);
  std::vector<cplx> amp(n, cplx{0.0, 0.0});
  const std::size_t parity = r % 2;
  std::vector<cplx> sub;
  for (std::size_t a = parity; a < n; a += 2) {
    const long j = (static_cast<long>(a) + static_cast<long>(r)) / 2;
    const long s = (static_cast<long>(a) - static_cast<long>(r)) / 2;
    sub.push_back(corr[static_cast<std::size_t>(j) * n + detail::wrap(s, n)] * scale);
  }

  // The other parity is the same band-limited sequence shifted by half a
  // sublattice step.
  const std::size_t m = sub.size();
  std::vector<cplx> spec = sub;
  detail::dft_rows(spec, m, Direction::kForward);
  for (std::size_t i = 0; i < m; ++i) {
    if (2 * i == m) {
      spec[i] = 0.0;
      continue;
    }
    const double f = (2 * i < m) ? static_cast<double>(i)
                                 : static_cast<double>(i) - static_cast<double>(m);
    spec[i] *= std::polar(1.0 / static_cast<double>(m), std::numbers::pi * f / static_cast<double>(m));
  }
  detail::dft_rows(spec, m, Direction::kBackward);

  for (std::size_t i = 0; i < m; ++i) {
    amp[parity + 2 * i] = sub[i];
    if (parity + 2 * i + 1 < n) amp[parity + 2 * i + 1] = spec[i];
  }
  // With odd parity the sample before the first one is the shifted value at i = m - 1
  // of the periodic sequence; the state is negligible there.
  return PositionWavefunction{g, std::move(amp)}.normalized();
}

PhaseSpaceMoments moments(const WignerMap& w) {
  const SpatialGrid& g = w.grid();
  const MomentumGrid lat = w.p_lattice();
  const std::vector<double> mq = marginal_q(w);
  const std::vector<double> mp = marginal_p(w);
  auto stats = [](const std::vector<double>& m, auto&& coord) {
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      s0 += m[i];
      s1 += m[i] * coord(i);
    }
    const double mean = s1 / s0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double x = coord(i) - mean;
      s2 += m[i] * x * x;
    }
    return std::pair{mean, std::sqrt(s2 / s0)};
  };
  const auto [mean_q, sigma_q] = stats(mq, [&](std::size_t j) { return g.q(j); });
  const auto [mean_p, sigma_p] = stats(mp, [&](std::size_t k) { return lat.p(k); });
  return PhaseSpaceMoments{mean_q, mean_p, sigma_q, sigma_p};
}

double sup_distance(const WignerMap& a, const WignerMap& b) {
  require_same_grid(a.grid(), b.grid(), "sup_distance");
  const auto x = a.values();
  const auto y = b.values();
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace phasefilter
