// Copyright 2026 The qpclass Authors
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

#include "qpclass/classifier.hpp"
#include "qpclass/dense_state.hpp"
#include "qpclass/experiment.hpp"
#include "qpclass/sparse_state.hpp"

namespace {

using namespace qpclass;

BinaryPattern random_pattern(std::size_t n, std::mt19937_64& rng) {
  BinaryPattern p(n);
  for (std::size_t k = 0; k < n; ++k) p.set(k, rng() & 1u);
  return p;
}

TrainingSet random_training(std::size_t N, std::size_t n, std::uint32_t d,
                            std::mt19937_64& rng) {
  std::vector<LabeledPattern> members;
  members.reserve(N);
  for (std::size_t p = 0; p < N; ++p) {
    members.push_back({random_pattern(n, rng),
                       ClassLabel{static_cast<std::uint32_t>(rng() % d)}});
  }
  return TrainingSet(std::move(members), d);
}

void BM_Hamming(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_pattern(n, rng);
  const auto b = random_pattern(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hamming_distance(a, b));
}
BENCHMARK(BM_Hamming)->Arg(64)->Arg(784)->Arg(4096);

// Gate-by-gate sparse simulation, psi0 through psi4.
void BM_SparsePipeline(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto training = random_training(N, n, 10, rng);
  const auto input = random_pattern(n, rng);
  for (auto _ : state) {
    auto psi4 = run_to_psi4(training, input, 1.0);
    benchmark::DoNotOptimize(psi4.terms().data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(N * n));
}
BENCHMARK(BM_SparsePipeline)
    ->Args({400, 784})
    ->Args({1000, 256})
    ->Args({2000, 256})
    ->Args({1000, 512})
    ->Unit(benchmark::kMillisecond);

void BM_Analytic(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto N = static_cast<std::size_t>(state.range(0));
  const auto training = random_training(N, 784, 10, rng);
  const auto input = random_pattern(784, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic_distribution(training, input, 1.0));
  }
}
BENCHMARK(BM_Analytic)->Arg(400)->Arg(4000)->Unit(benchmark::kMicrosecond);

void BM_ShotLoop(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const auto training = random_training(400, 784, 10, rng);
  const auto input = random_pattern(784, rng);
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_shot_loop(training, input, 1.0, shots, 7));
  }
}
BENCHMARK(BM_ShotLoop)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

// Full state vector on a problem small enough for the dense oracle.
void BM_DenseRun(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<LabeledPattern> members;
  for (std::uint32_t p = 0; p < 4; ++p) {
    members.push_back({random_pattern(n, rng), ClassLabel{p % 2}});
  }
  const TrainingSet training(std::move(members), 2);
  const auto input = random_pattern(n, rng);
  for (auto _ : state) {
    auto psi4 = dense_run(training, input, 1.0);
    benchmark::DoNotOptimize(psi4.amplitudes().data());
  }
}
BENCHMARK(BM_DenseRun)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
