// Serial reference vs OpenMP kernels. TRIOPO_THREADS caps the parallel runs.

#include <benchmark/benchmark.h>

#include "triopo/sweep.hpp"

namespace {

using namespace triopo;

void BM_OutputSpectrum(benchmark::State& state) {
  const auto p = make_params(0.10, 0.02, 0, 0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(output_spectrum(p, 0.05));
}
BENCHMARK(BM_OutputSpectrum);

void BM_EvaluatePoint(benchmark::State& state) {
  const auto p = make_params(0.10, 0.02, 0, 0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(p, 0.05));
}
BENCHMARK(BM_EvaluatePoint);

void sweep(benchmark::State& state, Execution exec) {
  const SweepConfig cfg;  // default 40 x 100 grid
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg, exec));
  state.SetItemsProcessed(state.iterations() * cfg.sigma_grid.steps * cfg.omega_grid.steps);
}
void BM_SweepSerial(benchmark::State& state) { sweep(state, Execution::serial); }
void BM_SweepParallel(benchmark::State& state) { sweep(state, Execution::parallel); }
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

void oracle(benchmark::State& state, Execution exec) {
  const auto p = make_params(0.10, 0.02, 0, 0, 1.5);
  SimConfig cfg;
  cfg.n_segments = 64;
  cfg.n_chains = 16;
  cfg.n_steps = 64 * 16384;
  const std::vector<SpectrumProbe> probes{{unit(quad::p1) - unit(quad::p2), 0.01},
                                          {unit(quad::q1) + unit(quad::q2), 0.05}};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_probes(p, cfg, probes, exec));
  state.SetItemsProcessed(state.iterations() * (cfg.n_steps + cfg.burn_in * cfg.n_chains));
}
void BM_OracleSerial(benchmark::State& state) { oracle(state, Execution::serial); }
void BM_OracleParallel(benchmark::State& state) { oracle(state, Execution::parallel); }
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
