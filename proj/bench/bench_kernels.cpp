#include <benchmark/benchmark.h>

#include "hsc/catalog.hpp"
#include "hsc/egyptian.hpp"
#include "hsc/lemmas.hpp"
#include "hsc/zharm.hpp"

namespace {

void BM_TheoremASerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(hsc::egypt::theorem_a_report_serial(st.range(0)));
}
void BM_TheoremAParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(hsc::egypt::theorem_a_report(st.range(0), static_cast<int>(st.range(1))));
}
BENCHMARK(BM_TheoremASerial)->Arg(1440)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremAParallel)->Args({1440, 1})->Args({1440, 2})->Args({1440, 4})->Unit(benchmark::kMillisecond);

const std::vector<std::vector<hsc::arith::Int>>& grid() {
  static const auto g = hsc::zharm::tuple_grid(2, 12, 2, 4);
  return g;
}

void BM_ZGridSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(hsc::zharm::classify_batch_serial(grid()));
}
void BM_ZGridParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(hsc::zharm::classify_batch(grid(), static_cast<int>(st.range(0))));
}
BENCHMARK(BM_ZGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZGridParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

const std::vector<std::shared_ptr<const hsc::group::Group>>& small_groups() {
  static const auto g = hsc::group::catalog_groups(24);
  return g;
}

void BM_LemmasSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(hsc::lemmas::lemma_harness_serial(small_groups()));
}
void BM_LemmasParallel(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(hsc::lemmas::lemma_harness_catalog(small_groups(), static_cast<int>(st.range(0))));
  }
}
BENCHMARK(BM_LemmasSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmasParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
