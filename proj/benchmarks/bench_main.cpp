// Copyright 2026 The qvtlab Authors
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

#include "qvt/decompose.hpp"
#include "qvt/estimate.hpp"
#include "qvt/heavy.hpp"
#include "qvt/random.hpp"
#include "qvt/sim.hpp"
#include "qvt/stats.hpp"
#include "qvt/transpile.hpp"

namespace {

using namespace qvt;

void BM_WeylDecompose(benchmark::State& state) {
  Rng rng(1);
  const Mat4 u = haar_su4(rng);
  for (auto _ : state) benchmark::DoNotOptimize(weyl_decompose(u));
}
BENCHMARK(BM_WeylDecompose);

void BM_ApproximateSu4(benchmark::State& state) {
  Rng rng(2);
  const Mat4 u = haar_su4(rng);
  for (auto _ : state) benchmark::DoNotOptimize(approximate_su4(u, 1e-2, true));
}
BENCHMARK(BM_ApproximateSu4);

void BM_Transpile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QvtCircuit c = generate_indexed_circuit(n, 3, 0);
  TranspileConfig cfg;
  cfg.level = OptLevel::High;
  cfg.tol = 1e-2;
  cfg.mirror = true;
  for (auto _ : state) benchmark::DoNotOptimize(transpile(c, cfg));
}
BENCHMARK(BM_Transpile)->DenseRange(4, 10, 2);

void BM_Statevector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QvtCircuit c = generate_indexed_circuit(n, 4, 0);
  for (auto _ : state) benchmark::DoNotOptimize(statevector_run(c));
}
BENCHMARK(BM_Statevector)->DenseRange(4, 14, 2);

void BM_Density(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TranspileConfig cfg;
  cfg.level = OptLevel::High;
  cfg.tol = 1e-2;
  cfg.mirror = true;
  const CompiledCircuit c = transpile(generate_indexed_circuit(n, 5, 0), cfg);
  const NoiseSpec noise = resolve_model(find_model("Semi-realistic"), 1e-2);
  for (auto _ : state) benchmark::DoNotOptimize(density_run(c, noise));
}
BENCHMARK(BM_Density)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& state) {
  ExperimentData d;
  Rng rng(6);
  std::uniform_int_distribution<std::uint64_t> heavy(50, 90);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(state.range(0)); ++i) d.per_circuit.push_back({heavy(rng), 100, i});
  for (auto _ : state) benchmark::DoNotOptimize(ci_bootstrap(d, 1000, kTwoSigmaConfidence, 7));
}
BENCHMARK(BM_Bootstrap)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PassingThreshold(benchmark::State& state) {
  const ErrorModelSpec& spec = find_model("TQ depolarizing");
  for (auto _ : state) benchmark::DoNotOptimize(passing_threshold(spec, 10, OptLevel::High, FidelityKind::Avg));
}
BENCHMARK(BM_PassingThreshold)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
