// Copyright 2026 The rfi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "rfi/couplings.hpp"
#include "rfi/exact_oracle.hpp"
#include "rfi/hyperrect.hpp"
#include "rfi/montecarlo.hpp"
#include "rfi/process.hpp"

namespace {

using namespace rfi;

void BM_Unrank(benchmark::State& state) {
  const auto n = static_cast<Site>(state.range(0));
  const Interval host = Interval::span(0, n - 1);
  const std::uint64_t k = count_nonempty_subintervals(static_cast<std::uint64_t>(n));
  RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(unrank_subinterval(host, stream.uniform_below(k + 1)));
  }
}
BENCHMARK(BM_Unrank)->Arg(16)->Arg(1 << 10)->Arg(1 << 20);

void BM_Step(benchmark::State& state) {
  const Interval start = Interval::span(-20, 20);
  const ExpansionParam p(0.5);
  RandomStream stream(2);
  for (auto _ : state) benchmark::DoNotOptimize(step(start, UniformRule{}, p, stream));
}
BENCHMARK(BM_Step);

void BM_StepRect(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const HyperRect start = HyperRect::point(std::vector<Site>(d, 0));
  const ExpansionParam p(0.5);
  RandomStream stream(3);
  for (auto _ : state) benchmark::DoNotOptimize(step_rect(start, p, stream));
}
BENCHMARK(BM_StepRect)->Arg(1)->Arg(2)->Arg(3);

void BM_CoupledRun(benchmark::State& state) {
  const ExpansionParam p(0.5);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_coupled(50, p, seed++));
}
BENCHMARK(BM_CoupledRun);

void BM_EvolveFloat(benchmark::State& state) {
  const auto t = static_cast<std::uint64_t>(state.range(0));
  const ExpansionParam p(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve<double>(Interval::point(0), t, UniformRule{}, p, {40}));
  }
}
BENCHMARK(BM_EvolveFloat)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_EvolveRational(benchmark::State& state) {
  const ExpansionParam p = ExpansionParam::parse("1/2");
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve<Rational>(Interval::point(0), 2, UniformRule{}, p, {20}));
  }
}
BENCHMARK(BM_EvolveRational)->Unit(benchmark::kMillisecond);

void BM_EstimateOccupancy(benchmark::State& state) {
  const std::vector<Site> sites{-2, -1, 0, 1, 2};
  const ExpansionParam p(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_occupancy(Interval::point(0), 3, sites, 100'000, UniformRule{}, p, 4));
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_EstimateOccupancy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
