// Copyright 2026 The qfdiv Authors.
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

#include "qfdiv/channels.hpp"
#include "qfdiv/divergence.hpp"
#include "qfdiv/harness.hpp"

namespace {

using namespace qfdiv;
namespace ens = qfdiv::harness::ensembles;

void BM_HermEig(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const HermitianOperator a = random_state(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::herm_eig(a));
}
BENCHMARK(BM_HermEig)->DenseRange(2, 8, 2)->Arg(16);

void BM_DMax(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  CounterRng rng(2);
  const auto pr = ens::pair(n, state.range(1) ? ens::SupportCase::Undominated : ens::SupportCase::FullRank, rng);
  const auto f = DivergenceGenerator::builtin("xlogx");
  for (auto _ : state) benchmark::DoNotOptimize(d_max(pr.rho, pr.sigma, f));
}
BENCHMARK(BM_DMax)->ArgsProduct({{2, 4, 8, 16}, {0, 1}});

void BM_MinimalReverseTest(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  CounterRng rng(3);
  const auto pr = ens::pair(n, ens::SupportCase::Undominated, rng);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_reverse_test(pr.rho, pr.sigma));
}
BENCHMARK(BM_MinimalReverseTest)->DenseRange(2, 8, 2)->Arg(16);

void BM_EqualityCheck(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  CounterRng rng(4);
  const auto pr = ens::pair(n, ens::SupportCase::FullRank, rng);
  const KrausChannel ch = random_channel(n, n, 2, 5);
  const auto f = DivergenceGenerator::builtin("xlogx");
  for (auto _ : state) benchmark::DoNotOptimize(equality_check(pr.rho, pr.sigma, ch, f));
}
BENCHMARK(BM_EqualityCheck)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
