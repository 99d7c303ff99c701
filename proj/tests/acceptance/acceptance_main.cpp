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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "phasefilter/filters.hpp"
#include "phasefilter/optics.hpp"
#include "phasefilter/scenarios.hpp"
#include "phasefilter/states.hpp"
#include "phasefilter/wigner.hpp"

namespace pf = phasefilter;
namespace fs = std::filesystem;

namespace {

// Desk-scale grid: n = 1024 over 64 slit widths.
const pf::SpatialGrid kDesk = pf::make_grid(1024, 0.0, 64.0);

class Verdict {
 public:
  // Records value <= limit.
  void at_most(const std::string& what, double value, double limit) {
    add(what, value, "<=", limit, value <= limit);
  }
  void at_least(const std::string& what, double value, double limit) {
    add(what, value, ">=", limit, value >= limit);
  }
  void require(const std::string& what, bool ok) {
    parts_.push_back(what + (ok ? " ok" : " FAILED"));
    passed_ = passed_ && ok;
  }
  bool passed() const { return passed_; }
  std::string text() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "; " : "") + parts_[i];
    return out;
  }

 private:
  void add(const std::string& what, double value, const char* op, double limit, bool ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3e %s %.4g", what.c_str(), value, op, limit);
    parts_.push_back(buf);
    passed_ = passed_ && ok && std::isfinite(value);
  }

  std::vector<std::string> parts_;
  bool passed_ = true;
};

double sup_vs(const pf::WignerMap& w, const std::function<double(double, double)>& f) {
  const auto lat = w.p_lattice();
  double worst = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      worst = std::max(worst, std::abs(w.at(j, k) - f(w.grid().q(j), lat.p(k))));
    }
  }
  return worst;
}

oracle::Complex chirped(double q) {
  const double x = q - 1.0;
  return std::pow(oracle::kPi * 1.69, -0.25) * std::exp(-x * x / (2.0 * 1.69)) *
         std::polar(1.0, 0.5 * q + 0.2 * q * q);
}

void gaussian_oracle(Verdict& v) {
  const auto w = pf::wigner_from_position(pf::gaussian_state(kDesk, 0.0, 1.0));
  v.at_most("sup err", sup_vs(w, [](double q, double p) {
              return (1.0 / oracle::kPi) * std::exp(-q * q - p * p);
            }), 1e-9);
  v.at_most("|W(0,0)-1/pi|", std::abs(w.at(512, 512) - 1.0 / oracle::kPi), 1e-9);
}

void cat_oracle(Verdict& v) {
  const double d = 4.0;
  const auto w = pf::wigner_from_position(pf::double_slit_state(kDesk, d, 1.0));
  v.at_most("sup err", sup_vs(w, [&](double q, double p) {
              return oracle::gaussian_sum_wdf(oracle::cat(d, 1.0), q, p);
            }), 1e-8);
  // Zero crossings of W(0, p) are half a fringe period apart.
  const auto lat = w.p_lattice();
  std::vector<double> zeros;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const double p0 = lat.p(k), p1 = lat.p(k + 1);
    if (std::abs(p0) > 2.5 || std::abs(p1) > 2.5) continue;
    const double a = w.at(512, k), b = w.at(512, k + 1);
    if (a * b < 0.0) zeros.push_back(p0 - a * (p1 - p0) / (b - a));
  }
  const double period = zeros.size() > 1
                            ? 2.0 * (zeros.back() - zeros.front()) / (zeros.size() - 1.0)
                            : 0.0;
  const double expected = oracle::kPi / d;
  v.at_most("period rel err", std::abs(period - expected) / expected, 1e-3);
}

void marginals(Verdict& v) {
  const std::vector<pf::PositionWavefunction> states{
      pf::gaussian_state(kDesk, 0.0, 1.0), pf::double_slit_state(kDesk, 4.0, 1.0),
      pf::hermite_gauss_state(kDesk, 3, 1.0), oracle::sample(kDesk, chirped)};
  double worst_q = 0.0, worst_p = 0.0;
  for (const auto& psi : states) {
    const auto w = pf::wigner_from_position(psi);
    const auto mq = pf::marginal_q(w);
    const auto mp = pf::marginal_p(w);
    const auto lat = w.p_lattice();
    for (std::size_t j = 0; j < mq.size(); ++j) {
      worst_q = std::max(worst_q, std::abs(mq[j] - std::norm(psi.amp[j])));
    }
    for (std::size_t k = 0; k < mp.size(); ++k) {
      worst_p = std::max(worst_p, std::abs(mp[k] - std::norm(oracle::direct_ft(psi, lat.p(k)))));
    }
  }
  v.at_most("q err", worst_q, 1e-13);
  v.at_most("p err", worst_p, 1e-8);
}

void dual_paths(Verdict& v) {
  const auto aperture = pf::detector_transmittance(kDesk, 2.4, 4.0);
  const auto kernel = pf::gaussian_state(kDesk, 0.0, 1.5);
  const auto kernel_phi = pf::fourier_transform(kernel);
  const auto mom_t = pf::fourier_transform(pf::gaussian_state(kDesk, 0.0, 0.7, 1.0));
  const auto probe = pf::gaussian_state(kDesk, 0.0, 1.0);
  const auto w_ap = pf::wigner_from_position(aperture);
  const auto w_k = pf::wigner_from_position(kernel);
  const auto w_m = pf::wigner_from_momentum(mom_t);
  const auto w_probe = pf::wigner_from_position(probe);
  std::vector<double> worst(5, 0.0);
  for (const auto& psi : {pf::gaussian_state(kDesk, 0.0, 1.0), pf::double_slit_state(kDesk, 4.0, 1.0)}) {
    const auto w = pf::wigner_from_position(psi);
    const auto phi = pf::fourier_transform(psi);
    auto track = [&](std::size_t i, const pf::WignerMap& a, const pf::WignerMap& b) {
      worst[i] = std::max(worst[i], pf::sup_distance(a, b));
    };
    track(0, pf::filter_phase_space_position(w, w_ap),
          pf::wigner_from_position(pf::apply_position_filter(psi, aperture).state_raw));
    track(1, pf::filter_phase_space_momentum(w, w_m),
          pf::wigner_from_momentum(pf::apply_momentum_filter(phi, mom_t).state_raw));
    track(2, pf::general_filter_position_phase_space(w, w_k, 0.5),
          pf::wigner_from_position(pf::general_filter_position(psi, kernel, 0.5).state_raw));
    track(3, pf::general_filter_momentum_phase_space(w, w_k, 0.5),
          pf::wigner_from_momentum(pf::general_filter_momentum(phi, kernel_phi, 0.5).state_raw));
    track(4, pf::detect(w, w_probe), pf::detect_from_states(psi, probe));
  }
  const char* names[] = {"position", "momentum", "general position", "general momentum",
                         "detection"};
  for (std::size_t i = 0; i < worst.size(); ++i) v.at_most(names[i], worst[i], 1e-7);
}

void misaligned_beam(Verdict& v) {
  const double q_i = 8.0, delta = 1.0, d = 4.0, q_f = 1.0;
  const auto beam = pf::gaussian_state(kDesk, delta, q_i, 0.0, 0.0, pf::EdgePolicy::kAllow);
  const auto w = pf::wigner_from_position(
      pf::apply_position_filter(beam, pf::double_slit_state(kDesk, d, q_f)).state_raw);
  const double qi2 = q_i * q_i, qf2 = q_f * q_f;
  // The printed closed form, transcribed without its constant prefactor.
  auto printed = [&](double q, double p) {
    return std::exp(-(q - delta) * (q - delta) / qi2) * std::exp(-p * p * qf2 * qi2 / (qf2 + qi2)) *
           (std::exp(-(q - d) * (q - d) / qf2) + std::exp(-(q + d) * (q + d) / qf2) +
            2.0 * std::exp(-q * q / qf2) * std::exp(-d * d / (qf2 + qi2)) *
                std::cos(2.0 * d * p * qi2 / (qf2 + qi2)));
  };
  const auto product = oracle::beam_through_slits(q_i, delta, d, q_f);
  auto exact = [&](double q, double p) { return oracle::gaussian_sum_wdf(product, q, p); };

  const auto lat = w.p_lattice();
  const double cell = w.dq() * lat.spacing();
  double m_num = 0.0, m_printed = 0.0, m_exact = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double q = kDesk.q(j), p = lat.p(k);
      m_num += w.at(j, k);
      m_printed += printed(q, p);
      m_exact += exact(q, p);
    }
  }
  m_num *= cell;
  m_printed *= cell;
  m_exact *= cell;
  v.at_most("vs closed form", sup_vs(w, [&](double q, double p) {
              return printed(q, p) / m_printed * m_num;
            }) / m_num, 1e-7);
  v.at_most("vs superposition", sup_vs(w, [&](double q, double p) {
              return exact(q, p) / m_exact * m_num;
            }) / m_num, 1e-7);
}

void transition(Verdict& v) {
  const auto a = pf::wigner_from_position(pf::gaussian_state(kDesk, -1.0, 1.0));
  const auto b = pf::wigner_from_position(pf::gaussian_state(kDesk, 1.0, 1.0));
  v.at_most("|P-exp(-2)|", std::abs(pf::overlap(a, b) - std::exp(-2.0)), 1e-6);
  v.at_most("|purity-1|", std::abs(pf::overlap(a, a) - 1.0), 1e-8);
  const auto h0 = pf::wigner_from_position(pf::hermite_gauss_state(kDesk, 0, 1.0));
  const auto h1 = pf::wigner_from_position(pf::hermite_gauss_state(kDesk, 1, 1.0));
  v.at_most("|h0.h1|", std::abs(pf::overlap(h0, h1)), 1e-9);
}

void moyal(Verdict& v) {
  // Same sample spacing as the desk grid; the Hermite states fit well inside.
  const auto g = pf::make_grid(512, 0.0, 32.0);
  constexpr int kN = 5;
  std::vector<pf::CrossWignerMap> cross;
  for (int n = 0; n < kN; ++n) {
    for (int m = 0; m < kN; ++m) {
      cross.push_back(pf::cross_wigner(pf::hermite_gauss_state(g, n, 1.0),
                                       pf::hermite_gauss_state(g, m, 1.0)));
    }
  }
  const double cell = g.h() * g.dq() * g.wigner_lattice().spacing();
  double worst = 0.0;
  for (int n = 0; n < kN; ++n) {
    for (int m = 0; m < kN; ++m) {
      const auto a = cross[n * kN + m].values();
      for (int k = 0; k < kN; ++k) {
        for (int l = 0; l < kN; ++l) {
          const auto b = cross[k * kN + l].values();
          oracle::Complex s{0.0, 0.0};
          for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
          const double expected = (n == k && m == l) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(s * cell - expected));
        }
      }
    }
  }
  v.at_most("max |G-I|", worst, 1e-5);
}

void detection_positivity(Verdict& v) {
  const auto w = pf::wigner_from_position(pf::double_slit_state(kDesk, 4.0, 1.0));
  for (double width : {0.5, 1.0, 2.4, 4.0}) {
    const auto map = pf::detect(w, pf::wigner_from_position(pf::gaussian_state(kDesk, 0.0, width)));
    char label[32];
    std::snprintf(label, sizeof label, "min(q_d=%g)", width);
    v.at_least(label, map.min(), -1e-10);
  }
}

void which_path(Verdict& v) {
  const auto narrow = pf::run_detector_filter(2.4);
  const auto wide = pf::run_detector_filter(4.0);
  const auto& n5 = narrow.planes.back();
  const auto& w5 = wide.planes.back();
  v.at_most("energy ratio(2.4)", n5.interference_energy, 0.02);
  v.at_most("Vq(2.4, tau=5)", n5.visibility_q.value, 0.05);
  v.at_least("Vq(4, tau=5)", w5.visibility_q.value, 0.05);
  v.at_most("Vq(4, tau=5)", w5.visibility_q.value, 0.999);
  v.require("Vq(4) strictly inside", w5.visibility_q.value > 0.05 && w5.visibility_q.value < 0.999);
}

void propagation(Verdict& v) {
  const auto cat = pf::double_slit_state(kDesk, 4.0, 1.0);
  const auto before = pf::fourier_transform(cat);
  const auto moved = pf::free_propagate(cat, 5.0);
  const auto after = pf::fourier_transform(moved);
  double modulus = 0.0;
  for (std::size_t k = 0; k < before.amp.size(); ++k) {
    modulus = std::max(modulus, std::abs(std::norm(before.amp[k]) - std::norm(after.amp[k])));
  }
  v.at_most("|Phi|^2 change", modulus, 1e-10);

  const auto w = pf::wigner_from_position(pf::gaussian_state(kDesk, -2.0, 1.0, 0.6));
  v.at_most("shear composition",
            pf::sup_distance(pf::shear_wigner(pf::shear_wigner(w, 1.0), 2.0), pf::shear_wigner(w, 3.0)),
            1e-8);

  const auto psi = pf::gaussian_state(kDesk, -2.0, 1.0, 0.6);
  double q0 = 0.0;
  for (std::size_t j = 0; j < kDesk.size(); ++j) q0 += kDesk.q(j) * std::norm(psi.amp[j]);
  q0 *= kDesk.dq();
  const auto m = pf::moments(pf::wigner_from_position(pf::free_propagate(psi, 4.0)));
  v.at_most("Ehrenfest <q>", std::abs(m.mean_q - (q0 + 4.0 * 0.6)), 1e-8);
  v.at_most("Ehrenfest <p>", std::abs(m.mean_p - 0.6), 1e-8);

  v.at_most("shear vs wavefunction",
            pf::sup_distance(pf::shear_wigner(pf::wigner_from_position(cat), 5.0),
                             pf::wigner_from_position(moved)),
            1e-6);
}

// Number of contiguous runs at or above fraction * peak.
int runs_above(const std::vector<double>& x, double fraction) {
  double peak = 0.0;
  for (double y : x) peak = std::max(peak, y);
  int runs = 0;
  bool inside = false;
  for (double y : x) {
    const bool above = y >= fraction * peak;
    runs += (above && !inside) ? 1 : 0;
    inside = above;
  }
  return runs;
}

void delayed_choice(Verdict& v) {
  const auto r = pf::run_delayed_choice(2.0, 3.0, 4.0, 1.0, {0.0, 1.0, 3.0});
  v.at_most("Vq(tau=0)", r.planes[0].visibility_q.value, 0.05);
  v.at_most("Vp(tau=0)", r.planes[0].visibility_p.value, 0.05);
  v.at_least("Vq(tau=1)", r.planes[1].visibility_q.value, 0.5);
  v.require("two lobes at tau=3 split below 10% of peak", runs_above(r.planes[2].marginal_q, 0.1) == 2);
}

void uncertainty(Verdict& v) {
  struct Named {
    pf::PositionWavefunction psi;
    bool minimal;
  };
  const std::vector<Named> states{
      {pf::gaussian_state(kDesk, 0.0, 1.0), true},
      {pf::gaussian_state(kDesk, 3.0, 0.6, 1.5), true},
      {pf::gaussian_state(kDesk, -2.0, 2.5), true},
      {oracle::sample(kDesk, chirped), false},
      {pf::double_slit_state(kDesk, 4.0, 1.0), false},
      {pf::hermite_gauss_state(kDesk, 2, 1.0), false},
      {pf::hermite_gauss_state(kDesk, 4, 1.0), false},
      {pf::lens_output_state(kDesk, 4.0, 1.0, 2.0, 3.0), false},
      {*pf::apply_position_filter(
           pf::gaussian_state(kDesk, 1.0, 8.0, 0.0, 0.0, pf::EdgePolicy::kAllow),
           pf::double_slit_state(kDesk, 4.0, 1.0))
            .state_renorm,
       false},
  };
  double lowest = INFINITY, worst_gauss = 0.0;
  for (const auto& s : states) {
    const auto& g = s.psi.grid;
    double n = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double a = std::norm(s.psi.amp[j]);
      n += a;
      m1 += a * g.q(j);
      m2 += a * g.q(j) * g.q(j);
    }
    const double var_q = m2 / n - (m1 / n) * (m1 / n);
    const auto lat = g.fourier_lattice();
    double pn = 0.0, p1 = 0.0, p2 = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double p = lat.p(k);
      const double a = std::norm(oracle::direct_ft(s.psi, p));
      pn += a;
      p1 += a * p;
      p2 += a * p * p;
    }
    const double var_p = p2 / pn - (p1 / pn) * (p1 / pn);
    const double ratio = std::sqrt(var_q * var_p) / (0.5 * g.hbar());
    lowest = std::min(lowest, ratio);
    if (s.minimal) worst_gauss = std::max(worst_gauss, std::abs(ratio - 1.0));
  }
  v.at_least("min ratio", lowest, 1.0 - 1e-6);
  v.at_most("Gaussian |ratio-1|", worst_gauss, 1e-6);
}

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  Run r;
  FILE* pipe = popen(("'" + std::string(PHASEFILTER_CLI) + "' " + args + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool same_file(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

void cli_determinism(Verdict& v) {
  const fs::path root = fs::temp_directory_path() / "phasefilter_acceptance";
  fs::remove_all(root);
  const Run first = cli("figures --out '" + (root / "a").string() + "'");
  const Run second = cli("figures --out '" + (root / "b").string() + "'");
  v.require("figures exit 0", first.code == 0 && second.code == 0);

  std::vector<fs::path> expected;
  for (const char* d : {"fig02", "fig03", "fig04", "fig06", "fig08", "fig10", "fig11", "fig12"}) {
    for (const char* f : {"wigner.tsv", "marginal_q.tsv", "marginal_p.tsv", "metrics.json",
                          "manifest.txt"}) {
      expected.push_back(fs::path(d) / f);
    }
  }
  expected.push_back("fig05/transmittance.tsv");
  expected.push_back("fig07/transmittance.tsv");
  expected.push_back("fig09/setup.txt");
  bool complete = true, identical = true;
  for (const auto& rel : expected) {
    const bool both = fs::exists(root / "a" / rel) && fs::exists(root / "b" / rel);
    complete = complete && both;
    identical = identical && both && same_file(root / "a" / rel, root / "b" / rel);
  }
  v.require("figures 2-12 present", complete);
  v.require("byte-identical reruns", identical);
  fs::remove_all(root);

  const Run check = cli("validate");
  int pass_lines = 0, fail_lines = 0;
  std::istringstream lines(check.out);
  for (std::string line; std::getline(lines, line);) {
    pass_lines += line.rfind("PASS [", 0) == 0 ? 1 : 0;
    fail_lines += line.rfind("FAIL [", 0) == 0 ? 1 : 0;
  }
  v.require("validate reports 12 checks", pass_lines + fail_lines == 12);
  v.require("validate all pass", check.code == 0 && fail_lines == 0);
}

struct Criterion {
  const char* name;
  void (*fn)(Verdict&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"Gaussian WDF oracle", gaussian_oracle},
      {"two-slit WDF oracle", cat_oracle},
      {"exact marginals", marginals},
      {"dual-path filtering", dual_paths},
      {"misaligned beam through slits", misaligned_beam},
      {"transition probability", transition},
      {"Moyal orthonormality", moyal},
      {"detection positivity", detection_positivity},
      {"which-path destruction", which_path},
      {"free propagation", propagation},
      {"delayed choice", delayed_choice},
      {"uncertainty floor", uncertainty},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  int id = 0;
  for (const auto& c : criteria) {
    ++id;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.fn(v);
    } catch (const std::exception& e) {
      v.require(std::string("exception: ") + e.what(), false);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += v.passed() ? 0 : 1;
    std::printf("%s [%2d] %s (%.1fs): %s\n", v.passed() ? "PASS" : "FAIL", id, c.name, secs,
                v.text().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", id - failures, id);
  return failures == 0 ? 0 : 1;
}
