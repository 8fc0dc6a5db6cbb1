#include <benchmark/benchmark.h>

#include "monolab/verify.hpp"

using namespace monolab;

namespace {

verify::SweepConfig config(verify::System sys, measures::MeasureKind k, std::size_t n) {
  verify::SweepConfig cfg;
  cfg.n_states = n;
  cfg.seed = 1;
  cfg.system = sys;
  cfg.measure = k;
  cfg.exponents = k == measures::MeasureKind::crenoa ? std::vector<double>{2.0, 3.0, 4.0}
                                                     : std::vector<double>{0.5, 1.0, 1.5, 2.0};
  return cfg;
}

void BM_TripartiteSerial(benchmark::State& st) {
  const auto cfg = config(verify::System::tripartite_pure, measures::MeasureKind::concurrence, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify::run_sweep_serial(cfg));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_TripartiteParallel(benchmark::State& st) {
  const auto cfg = config(verify::System::tripartite_pure, measures::MeasureKind::concurrence, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify::run_sweep(cfg));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_CrenoaSerial(benchmark::State& st) {
  const auto cfg = config(verify::System::tripartite_pure, measures::MeasureKind::crenoa, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify::run_sweep_serial(cfg));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_CrenoaParallel(benchmark::State& st) {
  const auto cfg = config(verify::System::tripartite_pure, measures::MeasureKind::crenoa, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify::run_sweep(cfg));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ChainSerial(benchmark::State& st) {
  const auto cfg = config(verify::System::four_qubit_pure, measures::MeasureKind::concurrence, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify::run_sweep_serial(cfg));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ChainParallel(benchmark::State& st) {
  const auto cfg = config(verify::System::four_qubit_pure, measures::MeasureKind::concurrence, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify::run_sweep(cfg));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_TripartiteSerial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TripartiteParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrenoaSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrenoaParallel)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChainParallel)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
