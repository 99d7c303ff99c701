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

#ifndef PHASEFILTER_WIGNER_HPP_
#define PHASEFILTER_WIGNER_HPP_

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "phasefilter/grid.hpp"
#include "phasefilter/states.hpp"

namespace phasefilter {

/// Real quasi-probability W(q_j, p_k) on (grid, grid.wigner_lattice()),
/// stored row-major with q as the slow index.
class WignerMap {
 public:
  /// Zero map.
  explicit WignerMap(SpatialGrid grid);
  /// Throws InvalidArgument on a size mismatch or non-finite values.
  WignerMap(SpatialGrid grid, std::vector<double> values);

  const SpatialGrid& grid() const noexcept { return grid_; }
  MomentumGrid p_lattice() const noexcept { return grid_.wigner_lattice(); }
  std::size_t size() const noexcept { return grid_.size(); }
  double dq() const noexcept { return grid_.dq(); }
  double dp() const noexcept { return p_lattice().spacing(); }

  double at(std::size_t j, std::size_t k) const noexcept { return w_[j * size() + k]; }
  std::span<const double> row(std::size_t j) const noexcept {
    return {w_.data() + j * size(), size()};
  }
  std::span<const double> values() const noexcept { return w_; }
  std::vector<double>& mutable_values() noexcept { return w_; }

  double max() const;
  double min() const;

 private:
  SpatialGrid grid_;
  std::vector<double> w_;
};

/// Complex cross-Wigner term W_nm on the same lattice as WignerMap.
class CrossWignerMap {
 public:
  CrossWignerMap(SpatialGrid grid, std::vector<Complex> values);

  const SpatialGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  Complex at(std::size_t j, std::size_t k) const noexcept { return w_[j * size() + k]; }
  std::span<const Complex> values() const noexcept { return w_; }

  WignerMap real_part() const;
  /// Largest |Im w|.
  double max_imag() const;

 private:
  SpatialGrid grid_;
  std::vector<Complex> w_;
};

/// Phi(p_k) = h^(-1/2) sum_j psi(q_j) exp(-i p_k q_j / hbar) dq on the Fourier lattice.
MomentumWavefunction fourier_transform(const PositionWavefunction& psi);
/// Exact inverse of fourier_transform.
PositionWavefunction inverse_fourier_transform(const MomentumWavefunction& phi);

/// Fraction of |Phi|^2 carried by Fourier-lattice momenta with |p| >= grid.band_limit().
double band_limit_leakage(const PositionWavefunction& psi);

/// Discrete WDF from the position representation. Row j is the length-n DFT of
/// the correlation psi*(q_{j-s}) psi(q_{j+s}), s in [-n/2, n/2), with samples off
/// the grid taken as zero; the result lands on the half-spacing Wigner lattice.
/// Throws AliasingError if the imaginary residue exceeds 1e-9 of the peak.
WignerMap wigner_from_position(const PositionWavefunction& psi);

/// Same quantity by direct summation, O(n^3). Cross-check for small grids.
WignerMap wigner_from_position_direct(const PositionWavefunction& psi);

/// Discrete WDF from the momentum representation: Phi is band-limited
/// interpolated onto the half-spacing lattice and correlated along p; the
/// q-transform is evaluated on the grid samples.
WignerMap wigner_from_momentum(const MomentumWavefunction& phi);

/// Cross-Wigner W_nm built from psi_n* (q - x/2) psi_m (q + x/2).
CrossWignerMap cross_wigner(const PositionWavefunction& psi_n, const PositionWavefunction& psi_m);

/// marginal_q[j] = sum_k w[j][k] dp
std::vector<double> marginal_q(const WignerMap& w);
/// marginal_p[k] = sum_j w[j][k] dq
std::vector<double> marginal_p(const WignerMap& w);
/// sum w dq dp
double total_mass(const WignerMap& w);

/// h sum w1 w2 dq dp; equals |<psi1|psi2>|^2 for pure states.
double overlap(const WignerMap& w1, const WignerMap& w2);
/// h sum w1 conj(w2) dq dp.
Complex overlap(const CrossWignerMap& w1, const CrossWignerMap& w2);

/// Recovers psi (up to a global phase, renormalized) from the WDF of a pure
/// state, using the sample at `reference` as q_0 (argmax of the position
/// marginal when empty). Samples whose midpoint with q_0 falls between grid
/// points are filled by band-limited half-sample interpolation.
/// Throws InvalidArgument when |psi(q_0)|^2 < 1e-6 of the peak or the map fails
/// the purity test.
PositionWavefunction reconstruct_position(const WignerMap& w,
                                          std::optional<std::size_t> reference = std::nullopt);

struct PhaseSpaceMoments {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double sigma_q = 0.0;
  double sigma_p = 0.0;

  double uncertainty_product() const noexcept { return sigma_q * sigma_p; }
};

/// First and second moments of the two marginals.
PhaseSpaceMoments moments(const WignerMap& w);

/// sup |a - b|; throws GridMismatch for maps on different grids.
double sup_distance(const WignerMap& a, const WignerMap& b);

}  // namespace phasefilter

#endif  // PHASEFILTER_WIGNER_HPP_
