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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "phasefilter/errors.hpp"
#include "phasefilter/filters.hpp"
#include "phasefilter/states.hpp"
#include "phasefilter/wigner.hpp"

namespace pf = phasefilter;

namespace {

const pf::SpatialGrid kGrid = pf::make_grid(512, 0.0, 32.0);
const pf::SpatialGrid kSmall = pf::make_grid(128, 0.0, 16.0);

std::vector<pf::PositionWavefunction> inputs(const pf::SpatialGrid& g) {
  return {pf::gaussian_state(g, 0.0, 1.0), pf::double_slit_state(g, 4.0, 1.0)};
}

}  // namespace

TEST(Filters, PositionFilterBothPathsAgree) {
  const auto t = pf::detector_transmittance(kGrid, 2.4, 4.0);
  const auto wt = pf::wigner_from_position(t);
  for (const auto& psi : inputs(kGrid)) {
    const auto out = pf::apply_position_filter(psi, t);
    EXPECT_LT(pf::sup_distance(pf::filter_phase_space_position(pf::wigner_from_position(psi), wt),
                               pf::wigner_from_position(out.state_raw)),
              1e-10);
  }
}

TEST(Filters, MomentumFilterBothPathsAgree) {
  const auto t = pf::fourier_transform(pf::gaussian_state(kGrid, 0.0, 0.7, 1.0));
  const auto wt = pf::wigner_from_momentum(t);
  for (const auto& psi : inputs(kGrid)) {
    const auto phi = pf::fourier_transform(psi);
    const auto out = pf::apply_momentum_filter(phi, t);
    EXPECT_LT(pf::sup_distance(pf::filter_phase_space_momentum(pf::wigner_from_position(psi), wt),
                               pf::wigner_from_momentum(out.state_raw)),
              1e-10);
  }
}

TEST(Filters, GeneralPositionFilterBothPathsAgree) {
  const auto k = pf::gaussian_state(kGrid, 0.0, 1.5);
  const auto wk = pf::wigner_from_position(k);
  for (double p0 : {0.0, 0.5, -1.25}) {
    for (const auto& psi : inputs(kGrid)) {
      const auto out = pf::general_filter_position(psi, k, p0);
      EXPECT_LT(pf::sup_distance(
                    pf::general_filter_position_phase_space(pf::wigner_from_position(psi), wk, p0),
                    pf::wigner_from_position(out.state_raw)),
                1e-10)
          << p0;
    }
  }
}

TEST(Filters, GeneralMomentumFilterBothPathsAgree) {
  const auto k = pf::gaussian_state(kGrid, 0.0, 1.5);
  const auto wk = pf::wigner_from_position(k);
  const auto kphi = pf::fourier_transform(k);
  for (double q0 : {0.0, 0.5, 1.0}) {
    for (const auto& psi : inputs(kGrid)) {
      const auto out = pf::general_filter_momentum(pf::fourier_transform(psi), kphi, q0);
      EXPECT_LT(pf::sup_distance(
                    pf::general_filter_momentum_phase_space(pf::wigner_from_position(psi), wk, q0),
                    pf::wigner_from_momentum(out.state_raw)),
                1e-10)
          << q0;
    }
  }
}

TEST(Filters, GeneralPositionFilterIsTheDirectConvolution) {
  const auto psi = pf::gaussian_state(kSmall, 0.5, 1.0, 0.2);
  const auto k = pf::gaussian_state(kSmall, 0.0, 0.8, 0.0, 0.1);
  const double p0 = 0.7;
  const auto out = pf::general_filter_position(psi, k, p0);
  const double dq = kSmall.dq();
  for (std::size_t j : {40u, 64u, 70u, 90u}) {
    oracle::Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < kSmall.size(); ++i) {
      const double diff = kSmall.q(j) - kSmall.q(i);
      const auto m = static_cast<long>(std::lround(diff / dq)) + 64;
      if (m < 0 || m >= 128) continue;
      acc += psi.amp[i] * std::polar(1.0, p0 * kSmall.q(i)) * k.amp[static_cast<std::size_t>(m)];
    }
    acc *= dq / std::sqrt(2.0 * oracle::kPi);
    EXPECT_NEAR(std::abs(out.state_raw.amp[j] - acc), 0.0, 1e-14) << j;
  }
}

TEST(Filters, ConvolvingGaussiansAddsWidthsInQuadrature) {
  const double a = 1.0, b = 1.5;
  const auto out = pf::general_filter_position(pf::gaussian_state(kGrid, 0.0, a),
                                               pf::gaussian_state(kGrid, 0.0, b), 0.0);
  const auto m = pf::moments(pf::wigner_from_position(*out.state_renorm));
  EXPECT_NEAR(m.sigma_q, std::sqrt(a * a + b * b) / std::sqrt(2.0), 1e-10);
}

TEST(Filters, PassedFractionsOfAGaussianAperture) {
  const double a = 2.0, b = 1.0;
  const auto out = pf::apply_position_filter(pf::gaussian_state(kGrid, 0.0, a),
                                             pf::gaussian_state(kGrid, 0.0, b));
  const double norm = std::sqrt(oracle::kPi / (1.0 / (a * a) + 1.0 / (b * b))) /
                      (oracle::kPi * a * b);
  EXPECT_NEAR(out.passed_fraction, norm, 1e-12);
  EXPECT_NEAR(out.peak_normalized_fraction, b / std::sqrt(a * a + b * b), 1e-12);
  ASSERT_TRUE(out.state_renorm.has_value());
  EXPECT_NEAR(out.state_renorm->norm2(), 1.0, 1e-12);
  EXPECT_FALSE(out.blocked());
}

TEST(Filters, OpaqueApertureBlocks) {
  pf::PositionWavefunction opaque{kGrid, std::vector<pf::Complex>(kGrid.size())};
  const auto out = pf::apply_position_filter(pf::gaussian_state(kGrid, 0.0, 1.0), opaque);
  EXPECT_TRUE(out.blocked());
  EXPECT_EQ(out.passed_fraction, 0.0);
  EXPECT_EQ(out.peak_normalized_fraction, 0.0);
}

TEST(Filters, ApplyFilterDispatchesEveryForm) {
  const auto psi = pf::double_slit_state(kGrid, 4.0, 1.0);
  const auto t = pf::gaussian_state(kGrid, 1.0, 2.0);
  const auto tphi = pf::fourier_transform(t);

  const auto pos = pf::apply_filter(psi, {pf::FilterForm::kPosition, t, 0.0});
  EXPECT_NEAR(pf::fidelity(*pos.state_renorm, *pf::apply_position_filter(psi, t).state_renorm),
              1.0, 1e-12);
  const auto gpos = pf::apply_filter(psi, {pf::FilterForm::kGeneralPosition, t, 0.3});
  EXPECT_NEAR(
      pf::fidelity(*gpos.state_renorm, *pf::general_filter_position(psi, t, 0.3).state_renorm),
      1.0, 1e-12);
  const auto mom = pf::apply_filter(psi, {pf::FilterForm::kMomentum, tphi, 0.0});
  const auto mom_direct = pf::apply_momentum_filter(pf::fourier_transform(psi), tphi);
  EXPECT_NEAR(mom.passed_fraction, mom_direct.passed_fraction, 1e-14);
  EXPECT_NEAR(pf::fidelity(*mom.state_renorm,
                           pf::inverse_fourier_transform(*mom_direct.state_renorm)),
              1.0, 1e-12);
  const auto gmom = pf::apply_filter(psi, {pf::FilterForm::kGeneralMomentum, tphi, 0.5});
  EXPECT_NEAR(gmom.passed_fraction,
              pf::general_filter_momentum(pf::fourier_transform(psi), tphi, 0.5).passed_fraction,
              1e-14);
}

TEST(Filters, FilterSpecValidation) {
  const auto t = pf::gaussian_state(kSmall, 0.0, 1.0);
  const auto tphi = pf::fourier_transform(t);
  EXPECT_THROW((pf::FilterSpec{pf::FilterForm::kMomentum, t, 0.0}.validate()),
               pf::InvalidArgument);
  EXPECT_THROW((pf::FilterSpec{pf::FilterForm::kPosition, tphi, 0.0}.validate()),
               pf::InvalidArgument);
  EXPECT_THROW((pf::FilterSpec{pf::FilterForm::kPosition, t, 1.0}.validate()),
               pf::InvalidArgument);
  EXPECT_THROW((pf::FilterSpec{pf::FilterForm::kGeneralPosition, t, NAN}.validate()),
               pf::InvalidArgument);
  auto bad = t;
  bad.amp[3] = {NAN, 0.0};
  EXPECT_THROW((pf::FilterSpec{pf::FilterForm::kPosition, bad, 0.0}.validate()),
               pf::InvalidArgument);
  EXPECT_NO_THROW((pf::FilterSpec{pf::FilterForm::kGeneralMomentum, tphi, 2.0}.validate()));
}

TEST(Filters, GridMismatchIsRejected) {
  EXPECT_THROW(pf::apply_position_filter(pf::gaussian_state(kGrid, 0.0, 1.0),
                                         pf::gaussian_state(kSmall, 0.0, 1.0)),
               pf::GridMismatch);
}

TEST(Detection, CoherentProbeGivesTheHusimiFunction) {
  const auto g = pf::gaussian_state(kGrid, 0.0, 1.0);
  const auto map = pf::detect(pf::wigner_from_position(g), pf::wigner_from_position(g));
  const auto lat = map.p_lattice();
  double worst = 0.0;
  for (std::size_t j = 0; j < kGrid.size(); ++j) {
    for (std::size_t k = 0; k < kGrid.size(); ++k) {
      const double q = kGrid.q(j), p = lat.p(k);
      worst = std::max(worst,
                       std::abs(map.at(j, k) - std::exp(-0.5 * (q * q + p * p)) / (2.0 * oracle::kPi)));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Detection, BothPathsAgreeAndStayNonNegative) {
  for (const auto& psi : inputs(kGrid)) {
    for (double width : {0.5, 1.0, 2.4}) {
      const auto det = pf::gaussian_state(kGrid, 0.0, width);
      const auto a = pf::detect(pf::wigner_from_position(psi), pf::wigner_from_position(det));
      const auto b = pf::detect_from_states(psi, det);
      EXPECT_LT(pf::sup_distance(a, b), 1e-10) << width;
      EXPECT_GE(b.min(), 0.0);
      EXPECT_GE(a.min(), -1e-10);
    }
  }
}

TEST(Detection, MassOfUnitStatesIsOne) {
  const auto a = pf::detect_from_states(pf::double_slit_state(kGrid, 4.0, 1.0),
                                        pf::gaussian_state(kGrid, 0.0, 1.0));
  EXPECT_NEAR(pf::total_mass(a), 1.0, 1e-8);
}

TEST(Interference, SplitRecoversTheCrossTerm) {
  const auto lobes = pf::double_slit_lobes(kGrid, 4.0, 1.0);
  const auto total = pf::wigner_from_position(lobes.sum());
  const std::vector<pf::WignerMap> parts{pf::wigner_from_position(lobes.plus),
                                         pf::wigner_from_position(lobes.minus)};
  const auto split = pf::split_interference(total, parts);
  const auto cross = pf::cross_wigner(lobes.plus, lobes.minus).real_part();
  double worst = 0.0;
  for (std::size_t i = 0; i < cross.values().size(); ++i) {
    worst = std::max(worst, std::abs(split.interference.values()[i] - 2.0 * cross.values()[i]));
  }
  EXPECT_LT(worst, 1e-14);
  EXPECT_NEAR(pf::total_mass(split.interference), std::exp(-16.0) / (1.0 + std::exp(-16.0)),
              1e-12);
}

TEST(Visibility, CosineFringesGiveTheirContrast) {
  std::vector<double> x(400);
  for (double v : {0.2, 0.5, 0.9}) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1.0 + v * std::cos(0.1 * i);
    const auto vis = pf::fringe_visibility(x, {0, x.size()});
    EXPECT_FALSE(vis.degenerate);
    EXPECT_NEAR(vis.value, v, 1e-3) << v;
  }
}

TEST(Visibility, EnvelopedFringesUseTheNeighbourMinimum) {
  std::vector<double> x(801);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = (static_cast<double>(i) - 400.0) / 100.0;
    x[i] = std::exp(-u * u) * (1.0 + std::cos(10.0 * u));
  }
  // Sampled minima sit within half a step of the true zeros.
  EXPECT_NEAR(pf::fringe_visibility(x, {0, x.size()}).value, 1.0, 2e-3);
}

TEST(Visibility, SinglePeakIsDegenerate) {
  std::vector<double> x(101);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::exp(-0.01 * (i - 50.0) * (i - 50.0));
  const auto vis = pf::fringe_visibility(x, {0, x.size()});
  EXPECT_TRUE(vis.degenerate);
  EXPECT_EQ(vis.value, 0.0);
}

TEST(Visibility, BadWindowsThrow) {
  std::vector<double> x(10, 1.0);
  EXPECT_THROW(pf::fringe_visibility(x, {5, 5}), pf::InvalidArgument);
  EXPECT_THROW(pf::fringe_visibility(x, {0, 11}), pf::InvalidArgument);
  std::vector<double> dark(10, 0.0);
  EXPECT_THROW(pf::fringe_visibility(dark, {0, 10}), pf::InvalidArgument);
}

TEST(Visibility, EnvelopeWindowBracketsTheCentralLobe) {
  std::vector<double> x{0.0, 0.05, 0.2, 0.6, 1.0, 0.5, 0.15, 0.09, 0.0};
  EXPECT_EQ(pf::envelope_window(x), (pf::IndexRange{2, 7}));
  EXPECT_EQ(pf::envelope_window(x, 0.5), (pf::IndexRange{3, 6}));
  EXPECT_THROW(pf::envelope_window(x, 1.5), pf::InvalidArgument);
  EXPECT_THROW(pf::envelope_window(std::vector<double>{}), pf::InvalidArgument);
}
