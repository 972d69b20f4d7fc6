// Copyright 2026 The entpower Authors.
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

#include "entpower/optimize.hpp"
#include "entpower/protocol.hpp"

using namespace entpower;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_Restarts(benchmark::State& state) {
  BipartiteUnitary U = random_instance(RandomKind::HaarLike, 3, 3, std::nullopt, 1);
  PowerOptions o;
  o.restarts = 16;
  o.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(entangling_power(U, o).value);
}
BENCHMARK(BM_Restarts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Branches(benchmark::State& state) {
  ProtocolCircuit c = build_protocol(build(spec::Named{"swap", 3}));
  Rng rng(2);
  PureState in = make_state({3, 3}, random_state(9, rng));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_branches(c, in, mode(state)).success_probability());
}
BENCHMARK(BM_Branches)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
