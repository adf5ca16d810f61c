// Copyright 2026 The qkb Authors
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

#include <benchmark/benchmark.h>

#include "qkb/encoding.hpp"
#include "qkb/evalbench.hpp"
#include "qkb/qknn.hpp"

namespace {

using namespace qkb;

void BM_SwapTestCircuit(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::vector<double> x(static_cast<std::size_t>(d), 0.3), y(static_cast<std::size_t>(d), 0.7);
  const auto a = encoding::encode_point(x, {}), b = encoding::encode_point(y, {});
  for (auto _ : state) benchmark::DoNotOptimize(qknn::swap_test_p0(a.state, b.state));
}
BENCHMARK(BM_SwapTestCircuit)->DenseRange(1, 6);

void BM_RunBenchmark(benchmark::State& state, const char* dataset, bench::ModelKind model) {
  bench::BenchConfig c;
  c.dataset = dataset;
  c.data_dir = QKB_BENCH_DATA_DIR;
  c.model = model;
  c.epochs = 5;
  data::Dataset raw;
  try {
    raw = bench::load_named_dataset(dataset, c.data_dir);
  } catch (const std::exception& e) {
    state.SkipWithError(e.what());
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(bench::run_benchmark(raw, c).metrics.accuracy);
}
BENCHMARK_CAPTURE(BM_RunBenchmark, iris_qknn, "iris", bench::ModelKind::Qknn)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunBenchmark, iris_cknn, "iris", bench::ModelKind::Cknn)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunBenchmark, wdbc_qknn, "wdbc", bench::ModelKind::Qknn)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunBenchmark, iris_qnn_5_epochs, "iris", bench::ModelKind::Qnn)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
