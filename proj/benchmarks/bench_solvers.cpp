// Copyright 2026 The choreq Authors
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

#include "choreq/generate.hpp"
#include "choreq/oracle.hpp"
#include "choreq/solver_bivalued.hpp"
#include "choreq/solver_three.hpp"
#include "choreq/solver_twotype.hpp"

namespace {

using namespace choreq;

void BM_SolveThreeAgents(benchmark::State& state) {
  GenParams p;
  p.n = 3;
  p.m = static_cast<int>(state.range(0));
  p.seed = 7;
  const Instance inst = generate(InstanceKind::general, p);
  for (auto _ : state) {
    ThreeAgentResult r = solve_three_agents(inst);
    benchmark::DoNotOptimize(r.alloc.owner.data());
  }
}
BENCHMARK(BM_SolveThreeAgents)->Arg(4)->Arg(8)->Arg(16);

void BM_SolveTwoType(benchmark::State& state) {
  GenParams p;
  p.n = 6;
  p.m = static_cast<int>(state.range(0));
  p.seed = 11;
  const Instance inst = generate(InstanceKind::two_type, p);
  for (auto _ : state) {
    TwoTypeResult r = solve_two_type(inst);
    benchmark::DoNotOptimize(r.alloc.owner.data());
  }
}
BENCHMARK(BM_SolveTwoType)->Arg(4)->Arg(8)->Arg(16);

void BM_BalancedBivalued(benchmark::State& state) {
  GenParams p;
  p.n = 5;
  p.m = static_cast<int>(state.range(0));
  p.seed = 13;
  p.k = 5;
  const Instance inst = generate(InstanceKind::bivalued, p);
  for (auto _ : state) {
    BivaluedResult r = balanced_ef1_fpo(inst);
    benchmark::DoNotOptimize(r.alloc.owner.data());
  }
}
BENCHMARK(BM_BalancedBivalued)->Arg(6)->Arg(10)->Arg(20);

void BM_EfxThreeBivalued(benchmark::State& state) {
  GenParams p;
  p.n = 3;
  p.m = static_cast<int>(state.range(0));
  p.seed = 17;
  p.k = 5;
  const Instance inst = generate(InstanceKind::bivalued, p);
  for (auto _ : state) {
    BivaluedResult r = efx_fpo_three_bivalued(inst);
    benchmark::DoNotOptimize(r.alloc.owner.data());
  }
}
BENCHMARK(BM_EfxThreeBivalued)->Arg(6)->Arg(9)->Arg(12);

void BM_IsFpoLp(benchmark::State& state) {
  GenParams p;
  p.n = 3;
  p.m = static_cast<int>(state.range(0));
  p.seed = 19;
  const Instance inst = generate(InstanceKind::general, p);
  const ThreeAgentResult solved = solve_three_agents(inst);
  for (auto _ : state) {
    bool fpo = is_fpo_lp(inst, solved.alloc);
    benchmark::DoNotOptimize(fpo);
  }
}
BENCHMARK(BM_IsFpoLp)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
