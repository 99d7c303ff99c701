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

#include "phasefilter/grid.hpp"

#include <cmath>
#include <string>

#include "phasefilter/errors.hpp"

namespace phasefilter {

std::vector<double> MomentumGrid::samples() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = p(k);
  return out;
}

SpatialGrid::SpatialGrid(std::size_t n, double q_center, double q_extent, double hbar) noexcept
    : n_(n),
      q_center_(q_center),
      q_extent_(q_extent),
      dq_(q_extent / static_cast<double>(n)),
      constants_{hbar} {}

std::vector<double> SpatialGrid::samples() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = q(j);
  return out;
}

std::size_t SpatialGrid::nearest_index(double q) const noexcept {
  const double x = std::round((q - q_center_) / dq_) + static_cast<double>(n_ / 2);
  if (!(x > 0.0)) return 0;
  if (x >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(x);
}

MomentumGrid SpatialGrid::fourier_lattice() const noexcept {
  return MomentumGrid(n_, constants_.h() / (static_cast<double>(n_) * dq_),
                      MomentumLattice::kFourier);
}

MomentumGrid SpatialGrid::wigner_lattice() const noexcept {
  return MomentumGrid(n_, std::numbers::pi * constants_.hbar / (static_cast<double>(n_) * dq_),
                      MomentumLattice::kWigner);
}

double SpatialGrid::band_limit() const noexcept {
  return std::numbers::pi * constants_.hbar / (2.0 * dq_);
}

long SpatialGrid::center_offset() const {
  const double units = q_center_ / dq_;
  const double rounded = std::round(units);
  if (std::abs(units - rounded) > 1e-9) {
    throw InvalidArgument("grid center " + std::to_string(q_center_) +
                          " is not an integer multiple of dq; convolution kernels "
                          "need q = 0 on a sample");
  }
  return static_cast<long>(rounded);
}

SpatialGrid make_grid(long n, double q_center, double q_extent, double hbar) {
  if (n < 4 || n % 2 != 0) {
    throw InvalidArgument("grid size must be even and >= 4, got " + std::to_string(n));
  }
  if (!std::isfinite(q_center)) throw InvalidArgument("grid center must be finite");
  if (!(q_extent > 0.0) || !std::isfinite(q_extent)) {
    throw InvalidArgument("grid extent must be positive and finite");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw InvalidArgument("hbar must be positive and finite");
  }
  return SpatialGrid(static_cast<std::size_t>(n), q_center, q_extent, hbar);
}

void require_same_grid(const SpatialGrid& a, const SpatialGrid& b, const char* what) {
  if (!(a == b)) throw GridMismatch(std::string(what) + ": operands live on different grids");
}

}  // namespace phasefilter
