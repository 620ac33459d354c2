// Copyright 2026 The Formalism Authors.
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


// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to
// compare thread counts; results are identical either way.

#include <benchmark/benchmark.h>

#include <vector>

#include "formalism/attribution.hpp"
#include "formalism/metrics.hpp"
#include "formalism/rng.hpp"
#include "synthetic.hpp"

namespace {

using namespace formalism;

MlpModel bench_model() {
  Rng rng(1);
  Network net({kNumFeatures, 20, 50, 1});
  for (std::size_t k = 0; k < net.num_parameters(); ++k) net.parameter(k) = rng.uniform(-0.3, 0.3);
  return MlpModel(net, Scaler{}, MlpConfig{}, Loss{});
}

std::vector<FeatureVector> bench_vectors(std::size_t n) {
  Rng rng(2);
  std::vector<FeatureVector> v(n);
  for (auto& f : v) {
    for (auto& x : f.values) x = rng.uniform(-2.0, 2.0);
  }
  return v;
}

void BM_ShapleySerial(benchmark::State& state) {
  auto m = bench_model();
  auto v = bench_vectors(2);
  for (auto _ : state) benchmark::DoNotOptimize(exact_shapley_serial(m, v[0], v[1]));
}
BENCHMARK(BM_ShapleySerial)->Unit(benchmark::kMillisecond);

void BM_ShapleyParallel(benchmark::State& state) {
  auto m = bench_model();
  auto v = bench_vectors(2);
  for (auto _ : state) benchmark::DoNotOptimize(exact_shapley(m, v[0], v[1]));
}
BENCHMARK(BM_ShapleyParallel)->Unit(benchmark::kMillisecond);

void BM_ShapSummary(benchmark::State& state) {
  auto m = bench_model();
  auto data = bench_vectors(static_cast<std::size_t>(state.range(0)));
  auto ref = mean_features(data);
  for (auto _ : state) benchmark::DoNotOptimize(shap_summary(m, data, ref));
}
BENCHMARK(BM_ShapSummary)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MultilabelSerial(benchmark::State& state) {
  Rng rng(3);
  auto n = static_cast<std::size_t>(state.range(0));
  auto gold = testing::random_sets(n, rng, 0.2);
  auto pred = testing::random_sets(n, rng, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(multilabel_counts_serial(gold, pred));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MultilabelSerial)->Arg(10000)->Arg(1000000);

void BM_MultilabelParallel(benchmark::State& state) {
  Rng rng(3);
  auto n = static_cast<std::size_t>(state.range(0));
  auto gold = testing::random_sets(n, rng, 0.2);
  auto pred = testing::random_sets(n, rng, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(multilabel_counts(gold, pred));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MultilabelParallel)->Arg(10000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
