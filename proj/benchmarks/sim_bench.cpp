// Copyright 2026 The multicon Authors
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

#include <random>

#include "multicon/coarsest.hpp"
#include "multicon/examples.hpp"
#include "multicon/sim.hpp"

namespace {

using namespace multicon;

void BM_Rk4Single(benchmark::State& state) {
  const IntMatrix l = builtin_example(2).published_total;
  std::mt19937_64 rng(1);
  const Eigen::VectorXd x0 = random_state(10, rng);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_single(l, x0, {0.01, 100.0, 1000}));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Rk4Single)->Unit(benchmark::kMillisecond);

void BM_Rk4SecondOrderError(benchmark::State& state) {
  const IntMatrix l = builtin_example(3).published_total;
  const Partition pi = coarsest_eep(l).pi_star;
  std::mt19937_64 rng(1);
  const Eigen::VectorXd x0 = random_state(8, rng), v0 = random_state(8, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_second_error(l, pi, {1, 0.8, 0.62, 0.98}, x0, v0, {0.01, 100.0, 1000}));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Rk4SecondOrderError)->Unit(benchmark::kMillisecond);

void BM_Rk4Dense(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = normal(rng) / static_cast<double>(n);
  a -= Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd y0 = random_state(static_cast<std::size_t>(n), rng);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_linear(a, y0, {0.01, 10.0, 1000}));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Rk4Dense)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
