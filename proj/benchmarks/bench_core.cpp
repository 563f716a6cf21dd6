// Copyright 2026 The sheetlaw Authors.
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

// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... to
// pick one family; SHEETLAW_THREADS controls the parallel variants.

#include <benchmark/benchmark.h>

#include "sheetlaw/fields.hpp"
#include "sheetlaw/spectral.hpp"

namespace {

using namespace sheetlaw;

void BM_GramAssemblySerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CovKernel k(ProcessKind::TiedDownB0, CenteringKind::FullMean);
  for (auto _ : state) {
    auto m = grid_gram_serial(k, n);
    benchmark::DoNotOptimize(m.a.data());
  }
}
BENCHMARK(BM_GramAssemblySerial)->Arg(16)->Arg(32)->Arg(48);

void BM_GramAssemblyParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CovKernel k(ProcessKind::TiedDownB0, CenteringKind::FullMean);
  for (auto _ : state) {
    auto m = grid_gram(k, n);
    benchmark::DoNotOptimize(m.a.data());
  }
}
BENCHMARK(BM_GramAssemblyParallel)->Arg(16)->Arg(32)->Arg(48);

void BM_SheetSampleSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    auto f = sample_sheet_serial(n, 7, stream++);
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(BM_SheetSampleSerial)->Arg(32)->Arg(64)->Arg(128);

void BM_SheetSampleParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    auto f = sample_sheet(n, 7, stream++);
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(BM_SheetSampleParallel)->Arg(32)->Arg(64)->Arg(128);

void BM_DerivedFunctionalBatch(benchmark::State& state) {
  const int n = 32;
  const int batch = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    double acc = 0.0;
    for (int k = 0; k < batch; ++k) {
      auto f = derive(sample_sheet(n, 7, stream++), ProcessKind::TiedDownB0);
      acc += quad_functional(f, CenteringKind::FullMean);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_DerivedFunctionalBatch)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
