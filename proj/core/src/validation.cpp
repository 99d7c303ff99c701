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

#include "phasefilter/validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "phasefilter/errors.hpp"
#include "phasefilter/filters.hpp"
#include "phasefilter/optics.hpp"
#include "phasefilter/scenarios.hpp"
#include "phasefilter/states.hpp"
#include "phasefilter/wigner.hpp"

namespace phasefilter {

namespace {

constexpr double kPi = std::numbers::pi;

// Limits of each check.
constexpr double kGaussianTol = 1e-9;
constexpr double kCatTol = 1e-8;
constexpr double kPeriodRelTol = 1e-3;
constexpr double kMarginalQTol = 1e-13;
constexpr double kMarginalPTol = 1e-8;
constexpr double kDualPathTol = 1e-7;
constexpr double kFilteredTol = 1e-7;
constexpr double kTransitionTol = 1e-6;
constexpr double kPurityTol = 1e-8;
constexpr double kOrthogonalityTol = 1e-9;
constexpr double kMoyalTol = 1e-5;
constexpr double kPositivityFloor = -1e-10;
constexpr double kEnergyRatioMax = 0.02;
constexpr double kBlockedVisibilityMax = 0.05;
constexpr double kPartialVisibilityMin = 0.05;
constexpr double kPartialVisibilityMax = 0.999;
constexpr double kModulusTol = 1e-10;
constexpr double kCompositionTol = 1e-8;
constexpr double kShearTol = 1e-6;
constexpr double kDisjointVisibilityMax = 0.05;
constexpr double kFringeVisibilityMin = 0.5;
constexpr double kUncertaintyRelTol = 1e-6;

class Report {
 public:
  void add(const std::string& what, double value, double limit, bool ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g (%s %.3g)", out_.empty() ? "" : "; ", what.c_str(),
                  value, ok ? "ok" : "limit", limit);
    out_ += buf;
    passed_ = passed_ && ok;
  }
  void at_most(const std::string& what, double value, double limit) {
    add(what, value, limit, value <= limit);
  }
  void at_least(const std::string& what, double value, double limit) {
    add(what, value, limit, value >= limit);
  }
  void note(const std::string& text) { out_ += (out_.empty() ? "" : "; ") + text; }
  void fail(const std::string& text) {
    note(text);
    passed_ = false;
  }
  bool passed() const { return passed_; }
  const std::string& text() const { return out_; }

 private:
  std::string out_;
  bool passed_ = true;
};

SpatialGrid oracle_grid(const ValidationOptions& o) {
  return o.quick ? make_grid(512, 0.0, 32.0) : make_grid(1024, 0.0, 64.0);
}

double sup_abs(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <class F>
double sup_against(const WignerMap& w, F&& oracle) {
  const SpatialGrid& g = w.grid();
  const MomentumGrid lat = w.p_lattice();
  double m = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      m = std::max(m, std::abs(w.at(j, k) - oracle(g.q(j), lat.p(k))));
    }
  }
  return m;
}

// 1. Unit-width Gaussian against its closed-form WDF.
void check_gaussian(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const WignerMap w = wigner_from_position(gaussian_state(g, 0.0, 1.0));
  r.at_most("sup|W-W_exact|",
            sup_against(w, [&](double q, double p) { return analytic_gaussian_wdf(q, p, 1.0); }),
            kGaussianTol);
  r.at_most("|W(0,0)-1/pi|", std::abs(w.at(g.size() / 2, g.size() / 2) - 1.0 / kPi), kGaussianTol);
}

// Period of the sign changes of `row` over the central part of the lattice.
double zero_crossing_period(const std::vector<double>& row, const MomentumGrid& lat, double reach) {
  std::vector<double> zeros;
  for (std::size_t k = 0; k + 1 < row.size(); ++k) {
    const double p0 = lat.p(k);
    if (std::abs(p0) > reach) continue;
    const double a = row[k];
    const double b = row[k + 1];
    if (a == 0.0) {
      zeros.push_back(p0);
    } else if (a * b < 0.0) {
      zeros.push_back(p0 + lat.spacing() * a / (a - b));
    }
  }
  if (zeros.size() < 2) return 0.0;
  return 2.0 * (zeros.back() - zeros.front()) / static_cast<double>(zeros.size() - 1);
}

// 2. Cat state against its closed form, and the fringe period of W_int.
void check_cat(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const double d = 4.0;
  const TwoLobeState lobes = double_slit_lobes(g, d, 1.0);
  const WignerMap w = wigner_from_position(lobes.sum());
  r.at_most("sup|W-W_exact|",
            sup_against(w, [&](double q, double p) { return analytic_slit_wdf(q, p, d, 1.0).total; }),
            kCatTol);
  const std::vector<WignerMap> parts{wigner_from_position(lobes.plus),
                                     wigner_from_position(lobes.minus)};
  const WignerMap w_int = split_interference(w, parts).interference;
  r.at_most("sup|W_int-exact|",
            sup_against(w_int, [&](double q, double p) { return analytic_slit_wdf(q, p, d, 1.0).w_int; }),
            kCatTol);
  const auto row = w_int.row(g.size() / 2);
  const double period =
      zero_crossing_period(std::vector<double>(row.begin(), row.end()), w.p_lattice(), 2.5);
  const double expected = kPi * g.hbar() / d;
  r.at_most("period rel err", std::abs(period - expected) / expected, kPeriodRelTol);
}

// |Phi(p)|^2 by direct summation on the momentum lattice of the map.
std::vector<double> direct_momentum_density(const PositionWavefunction& psi) {
  const SpatialGrid& g = psi.grid;
  const MomentumGrid lat = g.wigner_lattice();
  std::vector<double> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < g.size(); ++j) {
      acc += psi.amp[j] * std::polar(1.0, -lat.p(k) * g.q(j) / g.hbar());
    }
    out[k] = std::norm(acc * g.dq()) / g.h();
  }
  return out;
}

// 3. Marginals against |psi|^2 and |Phi|^2.
void check_marginals(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const std::array<std::pair<const char*, PositionWavefunction>, 4> states{{
      {"gaussian", gaussian_state(g, 0.0, 1.0)},
      {"cat", double_slit_state(g, 4.0, 1.0)},
      {"hermite3", hermite_gauss_state(g, 3, 1.0)},
      {"chirped", gaussian_state(g, 1.0, 1.3, 0.5, 0.3)},
  }};
  double worst_q = 0.0;
  double worst_p = 0.0;
  for (const auto& [name, psi] : states) {
    const WignerMap w = wigner_from_position(psi);
    std::vector<double> density(psi.amp.size());
    for (std::size_t j = 0; j < density.size(); ++j) density[j] = std::norm(psi.amp[j]);
    worst_q = std::max(worst_q, sup_abs(marginal_q(w), density));
    worst_p = std::max(worst_p, sup_abs(marginal_p(w), direct_momentum_density(psi)));
  }
  r.at_most("marginal_q err", worst_q, kMarginalQTol);
  r.at_most("marginal_p err", worst_p, kMarginalPTol);
}

// 4. Wavefunction path against phase-space path for every filter form.
void check_dual_paths(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const std::array<std::pair<const char*, PositionWavefunction>, 2> inputs{{
      {"gaussian", gaussian_state(g, 0.0, 1.0)},
      {"cat", double_slit_state(g, 4.0, 1.0)},
  }};
  const PositionWavefunction slit_f = detector_transmittance(g, 2.4, 4.0);
  const MomentumWavefunction mom_f = fourier_transform(gaussian_state(g, 0.0, 0.7, 1.0));
  const PositionWavefunction conv_f = gaussian_state(g, 0.0, 1.5);
  const MomentumWavefunction conv_mf = fourier_transform(conv_f);
  const PositionWavefunction det = gaussian_state(g, 0.0, 1.0);
  const WignerMap w_slit = wigner_from_position(slit_f);
  const WignerMap w_mom = wigner_from_momentum(mom_f);
  const WignerMap w_conv = wigner_from_position(conv_f);
  const WignerMap w_det = wigner_from_position(det);
  const double p0 = 0.5;
  const double q0 = 0.5;

  std::array<double, 5> worst{};
  for (const auto& [name, psi] : inputs) {
    const WignerMap w = wigner_from_position(psi);
    const MomentumWavefunction phi = fourier_transform(psi);
    worst[0] = std::max(worst[0], sup_distance(filter_phase_space_position(w, w_slit),
                                               wigner_from_position(apply_position_filter(psi, slit_f).state_raw)));
    worst[1] = std::max(worst[1], sup_distance(filter_phase_space_momentum(w, w_mom),
                                               wigner_from_momentum(apply_momentum_filter(phi, mom_f).state_raw)));
    worst[2] = std::max(worst[2], sup_distance(general_filter_position_phase_space(w, w_conv, p0),
                                               wigner_from_position(general_filter_position(psi, conv_f, p0).state_raw)));
    worst[3] = std::max(worst[3], sup_distance(general_filter_momentum_phase_space(w, w_conv, q0),
                                               wigner_from_momentum(general_filter_momentum(phi, conv_mf, q0).state_raw)));
    worst[4] = std::max(worst[4], sup_distance(detect(w, w_det), detect_from_states(psi, det)));
  }
  const std::array<const char*, 5> labels{"position", "momentum", "general position",
                                          "general momentum", "detection"};
  for (std::size_t i = 0; i < worst.size(); ++i) r.at_most(labels[i], worst[i], kDualPathTol);
}

// 5. Misaligned incident beam through the slits against the closed form.
void check_filtered_closed_form(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  SlitParams params;
  params.q_i = 8.0;
  params.delta = 1.0;
  const PositionWavefunction beam =
      gaussian_state(g, params.delta, params.q_i, 0.0, 0.0, EdgePolicy::kAllow);
  const PositionWavefunction slits = double_slit_state(g, params.d, params.q_f);
  const WignerMap w = wigner_from_position(apply_position_filter(beam, slits).state_raw);

  const MomentumGrid lat = w.p_lattice();
  std::vector<double> exact(w.values().size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      exact[j * g.size() + k] = analytic_filtered_wdf(g.q(j), lat.p(k), params, g.hbar());
    }
  }
  const WignerMap w_exact(g, std::move(exact));
  const double m1 = total_mass(w);
  const double m2 = total_mass(w_exact);
  double err = 0.0;
  for (std::size_t i = 0; i < w.values().size(); ++i) {
    err = std::max(err, std::abs(w.values()[i] / m1 - w_exact.values()[i] / m2));
  }
  r.at_most("sup err (unit mass)", err, kFilteredTol);
}

// 6. Transition probability, purity and orthogonality.
void check_overlaps(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const WignerMap a = wigner_from_position(gaussian_state(g, -1.0, 1.0));
  const WignerMap b = wigner_from_position(gaussian_state(g, 1.0, 1.0));
  r.at_most("|P-e^-2|", std::abs(overlap(a, b) - std::exp(-2.0)), kTransitionTol);
  r.at_most("|purity-1|", std::abs(overlap(a, a) - 1.0), kPurityTol);
  const WignerMap h0 = wigner_from_position(hermite_gauss_state(g, 0, 1.0));
  const WignerMap h1 = wigner_from_position(hermite_gauss_state(g, 1, 1.0));
  r.at_most("|<0|1>|", std::abs(overlap(h0, h1)), kOrthogonalityTol);
}

// 7. h * integral W_nm conj(W_kl) = delta_nk delta_ml for Hermite-Gauss states 0..4.
void check_moyal(const ValidationOptions&, Report& r) {
  const SpatialGrid g = make_grid(512, 0.0, 32.0);
  constexpr int kOrders = 5;
  std::vector<PositionWavefunction> hg;
  for (int n = 0; n < kOrders; ++n) hg.push_back(hermite_gauss_state(g, n, 1.0));
  std::vector<CrossWignerMap> cross;
  for (int n = 0; n < kOrders; ++n) {
    for (int m = 0; m < kOrders; ++m) cross.push_back(cross_wigner(hg[n], hg[m]));
  }
  double worst = 0.0;
  for (int n = 0; n < kOrders; ++n) {
    for (int m = 0; m < kOrders; ++m) {
      for (int k = 0; k < kOrders; ++k) {
        for (int l = 0; l < kOrders; ++l) {
          const Complex v = overlap(cross[n * kOrders + m], cross[k * kOrders + l]);
          const double expected = (n == k && m == l) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(v - expected));
        }
      }
    }
  }
  r.at_most("max |G - I|", worst, kMoyalTol);
}

// 8. Detection maps of the cat state are non-negative.
void check_positivity(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const WignerMap cat = wigner_from_position(double_slit_state(g, 4.0, 1.0));
  r.note("cat min W=" + std::to_string(cat.min()));
  for (double width : {0.5, 1.0, 2.4, 4.0}) {
    const WignerMap det = wigner_from_position(
        gaussian_state(g, 4.0, width, 0.0, 0.0, EdgePolicy::kAllow));
    char label[48];
    std::snprintf(label, sizeof label, "min(q_d=%g)", width);
    r.at_least(label, detect(cat, det).min(), kPositivityFloor);
  }
}

// 9. Which-path information removes interference; partial blocking keeps some.
void check_which_path(const ValidationOptions&, Report& r) {
  const ScenarioResult blocked = run_detector_filter(2.4);
  double worst = 0.0;
  for (const auto& p : blocked.planes) worst = std::max(worst, p.interference_energy);
  r.at_most("energy ratio(q_d=2.4)", worst, kEnergyRatioMax);
  r.at_most("V_q(tau=5,q_d=2.4)", blocked.planes.back().visibility_q.value, kBlockedVisibilityMax);
  const ScenarioResult partial = run_detector_filter(4.0);
  const double v = partial.planes.back().visibility_q.value;
  r.add("V_q(tau=5,q_d=4)", v, kPartialVisibilityMin,
        v > kPartialVisibilityMin && v < kPartialVisibilityMax);
}

// 10. Free propagation: modulus of Phi, composition, first moments, shear.
void check_propagation(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const PositionWavefunction cat = double_slit_state(g, 4.0, 1.0);
  const double tau = o.quick ? 2.0 : 5.0;
  const PositionWavefunction moved = free_propagate(cat, tau);
  const MomentumWavefunction before = fourier_transform(cat);
  const MomentumWavefunction after = fourier_transform(moved);
  double modulus = 0.0;
  for (std::size_t k = 0; k < before.amp.size(); ++k) {
    modulus = std::max(modulus, std::abs(std::norm(before.amp[k]) - std::norm(after.amp[k])));
  }
  r.at_most("| |Phi|^2 change |", modulus, kModulusTol);

  const PositionWavefunction split = free_propagate(free_propagate(cat, 0.4 * tau), 0.6 * tau);
  double composition = 0.0;
  for (std::size_t j = 0; j < cat.amp.size(); ++j) {
    composition = std::max(composition, std::abs(split.amp[j] - moved.amp[j]));
  }
  r.at_most("composition", composition, kCompositionTol);

  const PositionWavefunction packet = gaussian_state(g, 1.0, 1.0, 0.5);
  const PhaseSpaceMoments m0 = moments(wigner_from_position(packet));
  const PhaseSpaceMoments m1 = moments(wigner_from_position(free_propagate(packet, tau)));
  r.at_most("Ehrenfest", std::abs(m1.mean_q - (m0.mean_q + tau * m0.mean_p)), kCompositionTol);

  const WignerMap w = wigner_from_position(cat);
  r.at_most("shear vs wavefunction", sup_distance(shear_wigner(w, tau), wigner_from_position(moved)),
            kShearTol);
}

// 11. Delayed-choice geometry.
void check_delayed_choice(const ValidationOptions&, Report& r) {
  const ScenarioResult res = run_delayed_choice();
  const PlaneResult& z0 = res.planes.at(0);
  const PlaneResult& z1 = res.planes.at(1);
  const PlaneResult& z3 = res.planes.at(2);
  r.at_most("V_q(0)", z0.visibility_q.value, kDisjointVisibilityMax);
  r.at_most("V_p(0)", z0.visibility_p.value, kDisjointVisibilityMax);
  r.at_least("V_q(1)", z1.visibility_q.value, kFringeVisibilityMin);
  r.add("lobes(3)", z3.lobes_q, 2, z3.lobes_q == 2);
}

// 12. Heisenberg floor for every constructed state; equality for plain Gaussians.
void check_uncertainty(const ValidationOptions& o, Report& r) {
  const SpatialGrid g = oracle_grid(o);
  const double floor = g.hbar() / 2.0;
  double worst_floor = 1.0;
  std::vector<PositionWavefunction> states{
      double_slit_state(g, 4.0, 1.0), gaussian_state(g, 0.5, 1.2, 0.3, 0.4),
      lens_output_state(g, 4.0, 1.0, 2.0, 3.0)};
  for (int n = 0; n < 5; ++n) states.push_back(hermite_gauss_state(g, n, 1.0));
  for (const auto& psi : states) {
    worst_floor = std::min(worst_floor, moments(wigner_from_position(psi)).uncertainty_product() / floor);
  }
  r.at_least("min sigma_q sigma_p/(hbar/2)", worst_floor, 1.0 - kUncertaintyRelTol);
  double worst_eq = 0.0;
  for (double width : {0.7, 1.0, 1.5}) {
    const double u = moments(wigner_from_position(gaussian_state(g, 0.0, width))).uncertainty_product();
    worst_eq = std::max(worst_eq, std::abs(u / floor - 1.0));
  }
  r.at_most("Gaussian |ratio-1|", worst_eq, kUncertaintyRelTol);
}

struct CheckDef {
  const char* name;
  void (*fn)(const ValidationOptions&, Report&);
};

constexpr std::array<CheckDef, kValidationChecks> kChecks{{
    {"gaussian WDF oracle", check_gaussian},
    {"cat-state WDF oracle", check_cat},
    {"exact marginals", check_marginals},
    {"dual-path filtering", check_dual_paths},
    {"misaligned filtered WDF", check_filtered_closed_form},
    {"transition probability and purity", check_overlaps},
    {"Moyal orthonormality", check_moyal},
    {"detection positivity", check_positivity},
    {"which-path destruction", check_which_path},
    {"free propagation", check_propagation},
    {"delayed choice", check_delayed_choice},
    {"uncertainty floor", check_uncertainty},
}};

}  // namespace

CheckResult run_check(int id, const ValidationOptions& options) {
  if (id < 1 || id > kValidationChecks) throw InvalidArgument("run_check: no such check");
  const CheckDef& def = kChecks[static_cast<std::size_t>(id - 1)];
  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    def.fn(options, report);
  } catch (const std::exception& ex) {
    report.fail(std::string("error: ") + ex.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return CheckResult{id, def.name, report.passed(), report.text(), secs};
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kValidationChecks; ++id) out.push_back(run_check(id, options));
  return out;
}

std::string format_check(const CheckResult& result) {
  char head[96];
  std::snprintf(head, sizeof head, "%s [%2d] ", result.passed ? "PASS" : "FAIL", result.id);
  return head + result.name + ": " + result.detail;
}

}  // namespace phasefilter
