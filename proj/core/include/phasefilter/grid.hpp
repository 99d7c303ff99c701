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

#ifndef PHASEFILTER_GRID_HPP_
#define PHASEFILTER_GRID_HPP_

#include <cstddef>
#include <numbers>
#include <vector>

namespace phasefilter {

/// Action unit. All lengths and momenta are measured against hbar; the
/// default hbar = 1 gives h = 2*pi.
struct Constants {
  double hbar = 1.0;

  double h() const noexcept { return 2.0 * std::numbers::pi * hbar; }

  friend bool operator==(const Constants&, const Constants&) = default;
};

enum class MomentumLattice {
  kFourier,  ///< conjugate lattice of the discrete Fourier transform
  kWigner,   ///< half-spacing lattice on which the discrete WDF lives
};

/// Uniform momentum lattice p_k = (k - n/2) * spacing, centered on p = 0.
class MomentumGrid {
 public:
  MomentumGrid(std::size_t n, double spacing, MomentumLattice kind) noexcept
      : n_(n), spacing_(spacing), kind_(kind) {}

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return spacing_; }
  MomentumLattice kind() const noexcept { return kind_; }

  double p(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * spacing_;
  }
  std::vector<double> samples() const;

  friend bool operator==(const MomentumGrid&, const MomentumGrid&) = default;

 private:
  std::size_t n_;
  double spacing_;
  MomentumLattice kind_;
};

/// Uniform position lattice q_j = q_center + (j - n/2) * dq with dq = q_extent / n.
///
/// Immutable once built. Wavefunctions sampled on the grid are treated as zero
/// outside it, so states must decay well inside [q_0, q_{n-1}].
class SpatialGrid {
 public:
  std::size_t size() const noexcept { return n_; }
  double q_center() const noexcept { return q_center_; }
  double q_extent() const noexcept { return q_extent_; }
  double dq() const noexcept { return dq_; }
  double hbar() const noexcept { return constants_.hbar; }
  double h() const noexcept { return constants_.h(); }
  const Constants& constants() const noexcept { return constants_; }

  double q(std::size_t j) const noexcept {
    return q_center_ + (static_cast<double>(j) - static_cast<double>(n_ / 2)) * dq_;
  }
  std::vector<double> samples() const;

  /// Index of the sample closest to `q`, clamped to [0, n).
  std::size_t nearest_index(double q) const noexcept;

  /// Fourier lattice: spacing 2*pi*hbar / (n * dq).
  MomentumGrid fourier_lattice() const noexcept;
  /// Wigner lattice: spacing pi*hbar / (n * dq), half the Fourier spacing.
  MomentumGrid wigner_lattice() const noexcept;

  /// Largest |p| a state may carry without aliasing the discrete WDF:
  /// pi*hbar / (2*dq), half the range of the Wigner lattice.
  double band_limit() const noexcept;

  /// Integer offset of q_center in units of dq. Convolution kernels need the
  /// grid origin to sit on a sample; throws InvalidArgument otherwise.
  long center_offset() const;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  friend SpatialGrid make_grid(long n, double q_center, double q_extent, double hbar);
  SpatialGrid(std::size_t n, double q_center, double q_extent, double hbar) noexcept;

  std::size_t n_;
  double q_center_;
  double q_extent_;
  double dq_;
  Constants constants_;
};

/// Builds a grid. Requires n even and >= 4, q_extent > 0, hbar > 0 and finite
/// values; throws InvalidArgument otherwise.
SpatialGrid make_grid(long n, double q_center, double q_extent, double hbar = 1.0);

/// Throws GridMismatch when the two grids differ.
void require_same_grid(const SpatialGrid& a, const SpatialGrid& b, const char* what);

}  // namespace phasefilter

#endif  // PHASEFILTER_GRID_HPP_
