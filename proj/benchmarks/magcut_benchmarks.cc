// Copyright 2026 The magcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "magcut/datagen.h"
#include "magcut/graph.h"
#include "magcut/separation.h"
#include "magcut/solver.h"

namespace {

using namespace magcut;

// Dense random mixed graph; most draws are far from ancestral.
MixedGraph DenseMixedGraph(int d, std::uint64_t seed) {
  Rng rng = MakeRng(seed);
  std::uniform_int_distribution<int> state(0, 3);
  MixedGraph g(d);
  for (Vertex a = 0; a < d; ++a) {
    for (Vertex b = a + 1; b < d; ++b) {
      switch (state(rng)) {
        case 1:
          g.AddDirected(a, b);
          break;
        case 2:
          g.AddDirected(b, a);
          break;
        case 3:
          g.AddBidirected(a, b);
          break;
        default:
          break;
      }
    }
  }
  return g;
}

void BM_Distances(benchmark::State& state) {
  const MixedGraph g = DenseMixedGraph(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeDistances(g));
}
BENCHMARK(BM_Distances)->Arg(5)->Arg(10)->Arg(20);

void BM_Separate(benchmark::State& state) {
  const MixedGraph g = DenseMixedGraph(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(Separate(g));
}
BENCHMARK(BM_Separate)->Arg(5)->Arg(8)->Arg(12);

void BM_CheckMagOnMag(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const MixedGraph g = GenBf(d, 0.3, 0.2, 3).graph;
  for (auto _ : state) benchmark::DoNotOptimize(CheckMag(g));
}
BENCHMARK(BM_CheckMagOnMag)->Arg(6)->Arg(10)->Arg(15);

void BM_Solve(benchmark::State& state) {
  ScenarioConfig config;
  config.family = Family::kBf;
  config.d = static_cast<int>(state.range(0));
  config.n = 200;
  config.latent_fraction = 0.0;
  config.seed = 5;
  const HiddenData h = MakeScenario(config);
  Instance inst;
  inst.data = h.data;
  inst.forbidden = h.truth.forbidden;
  for (auto _ : state) benchmark::DoNotOptimize(Solve(inst));
}
BENCHMARK(BM_Solve)->Arg(3)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
