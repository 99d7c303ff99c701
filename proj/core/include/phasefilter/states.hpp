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

#ifndef PHASEFILTER_STATES_HPP_
#define PHASEFILTER_STATES_HPP_

#include <complex>
#include <span>
#include <vector>

#include "phasefilter/grid.hpp"

namespace phasefilter {

using Complex = std::complex<double>;

/// psi(q) sampled at grid.q(j).
struct PositionWavefunction {
  SpatialGrid grid;
  std::vector<Complex> amp;

  /// sum |amp|^2 dq
  double norm2() const;
  PositionWavefunction scaled(Complex factor) const;
  /// Unit-norm copy. Throws InvalidArgument for the zero state.
  PositionWavefunction normalized() const;
};

/// Phi(p) sampled on grid.fourier_lattice().
struct MomentumWavefunction {
  SpatialGrid grid;
  std::vector<Complex> amp;

  MomentumGrid lattice() const { return grid.fourier_lattice(); }
  /// sum |amp|^2 dp on the Fourier lattice.
  double norm2() const;
  MomentumWavefunction scaled(Complex factor) const;
  MomentumWavefunction normalized() const;
};

/// <a|b> = sum conj(a) b dq.
Complex inner_product(const PositionWavefunction& a, const PositionWavefunction& b);
/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const PositionWavefunction& a, const PositionWavefunction& b);

/// Geometry of the double-slit benches. d is the half-separation of the slits,
/// q_f the slit width, delta the misalignment of the incident beam, q_i its
/// width and q_d the width of the which-path detector.
struct SlitParams {
  double d = 4.0;
  double q_f = 1.0;
  double delta = 0.0;
  double q_i = 8.0;
  double q_d = 2.4;

  void validate() const;
};

/// What to do when a constructed state still has amplitude at the grid edge.
enum class EdgePolicy {
  kReject,  ///< throw ClippingError (physical states)
  kAllow,   ///< accept the truncation (broad beams, filter transmittances)
};

/// Throws ClippingError when |amp| at either end exceeds rel_tol * max|amp|.
void check_edges(const PositionWavefunction& psi, double rel_tol, const char* what);

/// (pi w^2)^(-1/4) exp(-(q - center)^2 / 2w^2) exp(i p0 q / hbar) exp(i chirp q^2).
PositionWavefunction gaussian_state(const SpatialGrid& grid, double center, double width,
                                    double p0 = 0.0, double chirp = 0.0,
                                    EdgePolicy policy = EdgePolicy::kReject);

/// Two separately addressable lobes whose sum is the full state.
struct TwoLobeState {
  PositionWavefunction plus;   ///< lobe centered at +d
  PositionWavefunction minus;  ///< lobe centered at -d

  PositionWavefunction sum() const;
};

/// N [exp(-(q-d)^2/2q_f^2) + exp(-(q+d)^2/2q_f^2)] with
/// N = (4 pi q_f^2)^(-1/4) [1 + exp(-d^2/q_f^2)]^(-1/2).
PositionWavefunction double_slit_state(const SpatialGrid& grid, double d, double q_f);
TwoLobeState double_slit_lobes(const SpatialGrid& grid, double d, double q_f,
                               EdgePolicy policy = EdgePolicy::kReject);

/// Normalized Hermite-Gauss function of the given order (<= 20), built with the
/// three-term recurrence on the normalized functions and then renormalized on
/// the grid. Rejects orders the grid cannot resolve.
PositionWavefunction hermite_gauss_state(const SpatialGrid& grid, int order, double width);

/// sum a_n psi_n, without renormalization.
PositionWavefunction build_superposition(std::span<const Complex> coeffs,
                                         std::span<const PositionWavefunction> states);

/// Two-slit field right behind a pair of identical off-axis lenses:
///   exp(-i q^2/K^2) { exp[-(q-d)^2/q_f^2 - i p0 q/hbar] + exp[-(q+d)^2/q_f^2 + i p0 q/hbar] },
/// renormalized to unit norm. K = +inf removes the lens phase.
PositionWavefunction lens_output_state(const SpatialGrid& grid, double d, double q_f, double K,
                                       double p0);
TwoLobeState lens_output_lobes(const SpatialGrid& grid, double d, double q_f, double K, double p0);

/// Gaussian which-path detector transmittance (pi q_d^2)^(-1/4) exp(-(q-center)^2/2q_d^2).
/// Transmittances are not required to fit the grid.
PositionWavefunction detector_transmittance(const SpatialGrid& grid, double q_d, double center);

/// Closed-form WDF of the centered Gaussian of width q_i:
/// (2/h) exp(-q^2/q_i^2 - p^2 q_i^2 / hbar^2).
double analytic_gaussian_wdf(double q, double p, double q_i, double hbar = 1.0);

struct SlitWdfTerms {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double w_int = 0.0;
  double total = 0.0;
};

/// Closed-form WDF of double_slit_state split into its two auto-terms and the
/// interference term 2 exp(-q^2/q_f^2) cos(2 d p / hbar) (common prefactor included).
SlitWdfTerms analytic_slit_wdf(double q, double p, double d, double q_f, double hbar = 1.0);

/// Closed-form WDF of a Gaussian beam (width q_i, offset delta) after the
/// double-slit transmittance. With delta -> d and q_i -> q_d it also describes
/// the cat state behind the Gaussian which-path detector.
double analytic_filtered_wdf(double q, double p, const SlitParams& params, double hbar = 1.0);

/// exp(-d^2 / (q_f^2 + q_i^2)), the suppression of the interference term in
/// analytic_filtered_wdf relative to the auto-terms.
double interference_attenuation(const SlitParams& params);

}  // namespace phasefilter

#endif  // PHASEFILTER_STATES_HPP_
