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

#include <benchmark/benchmark.h>

#include "phasefilter/filters.hpp"
#include "phasefilter/optics.hpp"
#include "phasefilter/states.hpp"
#include "phasefilter/wigner.hpp"

namespace pf = phasefilter;

namespace {

// Keeps dq = 1/8 so larger n means a wider window.
pf::SpatialGrid grid_for(benchmark::State& state) {
  const auto n = state.range(0);
  return pf::make_grid(n, 0.0, static_cast<double>(n) / 8.0);
}

void BM_WignerFromPosition(benchmark::State& state) {
  const auto psi = pf::double_slit_state(grid_for(state), 4.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pf::wigner_from_position(psi));
}

void BM_WignerFromMomentum(benchmark::State& state) {
  const auto phi = pf::fourier_transform(pf::double_slit_state(grid_for(state), 4.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(pf::wigner_from_momentum(phi));
}

void BM_Detect(benchmark::State& state) {
  const auto g = grid_for(state);
  const auto w = pf::wigner_from_position(pf::double_slit_state(g, 4.0, 1.0));
  const auto d = pf::wigner_from_position(pf::gaussian_state(g, 0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(pf::detect(w, d));
}

void BM_FreePropagate(benchmark::State& state) {
  const auto psi = pf::double_slit_state(grid_for(state), 4.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pf::free_propagate(psi, 1.0));
}

void BM_ShearWigner(benchmark::State& state) {
  const auto w = pf::wigner_from_position(pf::double_slit_state(grid_for(state), 4.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(pf::shear_wigner(w, 1.0));
}

}  // namespace

BENCHMARK(BM_WignerFromPosition)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WignerFromMomentum)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Detect)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FreePropagate)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ShearWigner)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
