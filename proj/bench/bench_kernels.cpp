// Serial reference vs OpenMP kernels: graph enumeration and the cell-volume
// estimator.

#include <benchmark/benchmark.h>

#include "wpvol/mc_engine.hpp"
#include "wpvol/ribbon_graph.hpp"

namespace {

using namespace wpvol;

RibbonGraph theta() { return from_cycles(6, {{0, 1, 2}, {3, 4, 5}}, {{0, 3}, {1, 4}, {2, 5}}); }

void BM_EnumerateSerial(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_trivalent_serial(g, n));
}

void BM_EnumerateParallel(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_trivalent(g, n));
}

void BM_VolumeSerial(benchmark::State& state) {
  const RibbonGraph g = theta();
  SamplerConfig cfg;
  cfg.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cell_volume_n1_serial(g, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}

void BM_VolumeParallel(benchmark::State& state) {
  const RibbonGraph g = theta();
  SamplerConfig cfg;
  cfg.samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cell_volume_n1(g, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Args({1, 2})->Args({2, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->Args({1, 2})->Args({2, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolumeSerial)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VolumeParallel)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
