// SPDX-License-Identifier: Apache-2.0
//
// wobblesim - coherence analysis of the air-to-ground channel under UAV pitch wobble
// Copyright (C) 2026 the wobblesim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include <vector>

#include "wobblesim/acf_analytic.hpp"
#include "wobblesim/acf_montecarlo.hpp"
#include "wobblesim/coherence.hpp"
#include "wobblesim/constants.hpp"
#include "wobblesim/quadrature.hpp"

namespace {

using namespace wobblesim;

void BM_GaussLegendreLookup(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  gauss_legendre(order); // warm the cache; the lookup is the per-call hot path
  for (auto _ : state) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    benchmark::DoNotOptimize(rule.nodes.data());
  }
}
BENCHMARK(BM_GaussLegendreLookup)->Arg(64)->Arg(128);

void BM_AcfWienerPoint(benchmark::State& state) {
  const ChannelSpec spec;
  double tau = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(acf_wiener(spec, 1.0, tau));
    tau = tau < 1e-2 ? tau * 1.01 : 1e-4;
  }
}
BENCHMARK(BM_AcfWienerPoint);

void BM_AcfSinusoidPoint(benchmark::State& state) {
  const ChannelSpec spec;
  const PitchProcessSpec proc = PitchProcessSpec::sinusoid(deg_to_rad(5.0));
  const double tau = 1e-3 * static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(acf_sinusoid_t0(spec, proc, tau));
}
BENCHMARK(BM_AcfSinusoidPoint)->Arg(1)->Arg(100)->Arg(900);

void BM_WienerCurve(benchmark::State& state) {
  const ChannelSpec spec;
  const std::vector<double> taus = default_tau_grid(0.05, 256, 1e-7);
  for (auto _ : state) {
    const AcfCurve curve = wiener_acf_curve(spec, 1.0, taus);
    benchmark::DoNotOptimize(curve.values.data());
  }
}
BENCHMARK(BM_WienerCurve);

void BM_SimulateRealization(benchmark::State& state) {
  const ChannelSpec spec;
  const PitchProcessSpec proc = PitchProcessSpec::wiener(1.0);
  std::vector<double> times(129);
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = 1e-4 * static_cast<double>(i);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_received(spec, proc, times, seed++).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(times.size()));
}
BENCHMARK(BM_SimulateRealization);

void BM_EstimateAcf(benchmark::State& state) {
  const ChannelSpec spec;
  const PitchProcessSpec proc = PitchProcessSpec::wiener(1.0);
  std::vector<double> taus(32);
  for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = 2e-4 * static_cast<double>(i);
  const EnsembleConfig cfg =
      EnsembleConfig::for_acf(static_cast<std::size_t>(state.range(0)), 1, 0.0, taus);
  for (auto _ : state) {
    const AcfCurve curve = estimate_acf(cfg, spec, proc, 0.0, taus);
    benchmark::DoNotOptimize(curve.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateAcf)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
