// Copyright 2026 The pcsketch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "pcsketch/privacy.h"
#include "pcsketch/sketch.h"

namespace {

pcsketch::SparseVector sparse_input(std::uint64_t d, std::size_t nnz) {
  std::mt19937_64 rng(1);
  std::vector<pcsketch::SparseEntry> entries;
  for (std::size_t i = 0; i < nnz; ++i) entries.push_back({rng() % d, 1.0});
  return pcsketch::SparseVector::from_unsorted(d, std::move(entries));
}

void BM_BuildFamily(benchmark::State& state) {
  const std::uint64_t d = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcsketch::HashFamily::build({d, 15, 256, 7}));
  }
  state.SetItemsProcessed(state.iterations() * d * 15);
}
BENCHMARK(BM_BuildFamily)->Arg(1 << 10)->Arg(1 << 16);

void BM_SketchVector(benchmark::State& state) {
  const std::size_t nnz = state.range(0);
  auto family = pcsketch::HashFamily::make_shared({1 << 16, 15, 256, 7});
  const auto x = sparse_input(1 << 16, nnz);
  for (auto _ : state) benchmark::DoNotOptimize(pcsketch::sketch_vector(x, family));
  state.SetItemsProcessed(state.iterations() * x.nnz());
}
BENCHMARK(BM_SketchVector)->Arg(100)->Arg(10000);

void BM_EstimateMedian(benchmark::State& state) {
  const std::uint32_t k = state.range(0);
  auto family = pcsketch::HashFamily::make_shared({1 << 12, k, 256, 7});
  const auto s = pcsketch::sketch_vector(sparse_input(1 << 12, 500), family);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcsketch::estimate_median(s, i));
    i = (i + 1) & ((1 << 12) - 1);
  }
}
BENCHMARK(BM_EstimateMedian)->Arg(5)->Arg(25)->Arg(99);

void BM_Privatize(benchmark::State& state) {
  auto family = pcsketch::HashFamily::make_shared({1 << 10, 25, 1024, 7});
  const pcsketch::Sketch s(family);
  pcsketch::NoiseSource source(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcsketch::privatize(s, pcsketch::NoiseSpec::gaussian(2.0), source));
  }
  state.SetItemsProcessed(state.iterations() * 25 * 1024);
}
BENCHMARK(BM_Privatize);

}  // namespace

BENCHMARK_MAIN();
