// Copyright 2026 The QPN Engine Authors
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


// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "qpn/dependence.hpp"
#include "qpn/random.hpp"
#include "qpn/scenarios.hpp"

namespace {

using qpn::Execution;

qpn::JointTable grid(std::size_t m, std::size_t n) {
  auto rng = qpn::stream_rng(5, 0);
  std::vector<qpn::VariableSpec> vars = {{"X", {}}, {"Y", {}}};
  for (std::size_t k = 0; k < m; ++k) vars[0].support.push_back(static_cast<double>(k));
  for (std::size_t k = 0; k < n; ++k) vars[1].support.push_back(static_cast<double>(k));
  return qpn::JointTable(vars, qpn::sample_simplex(rng, m * n));
}

void BM_Counterexample(benchmark::State& state, Execution exec) {
  // The binary network has no counterexample, so every trial runs.
  const auto qpn = qpn::two_node_qpn(true);
  const auto claim = qpn::parse_claim("Y->X:+");
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = qpn::find_counterexample(qpn, claim, 42, trials, exec);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Association(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = grid(n, n);
  for (auto _ : state) {
    auto r = qpn::association_check(t, "X", "Y", exec);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Counterexample, serial, Execution::Serial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Counterexample, parallel, Execution::Parallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Association, serial, Execution::Serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Association, parallel, Execution::Parallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
