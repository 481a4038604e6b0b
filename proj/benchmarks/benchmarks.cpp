#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "vrteh/bayes.hpp"
#include "vrteh/estimation.hpp"
#include "vrteh/gaussian.hpp"
#include "vrteh/rng.hpp"
#include "vrteh/simulation.hpp"
#include "vrteh/solver.hpp"

namespace {

void BM_normal_quantile(benchmark::State& state) {
  // Sweep the open interval so every polynomial region gets exercised.
  double p = 0.0;
  for (auto _ : state) {
    p += 9.93e-5;
    if (p >= 1.0) p -= 0.999888;
    benchmark::DoNotOptimize(vrteh::normal_quantile(p));
  }
}
BENCHMARK(BM_normal_quantile);

void BM_normal_draw(benchmark::State& state) {
  vrteh::RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.normal());
  }
}
BENCHMARK(BM_normal_draw);

void BM_solve_sigma_delta(benchmark::State& state) {
  // Dual-region input: both branches are computed and kept.
  const vrteh::SolveInput in{0.9, 1.0, -0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(vrteh::solve_sigma_delta(in));
  }
}
BENCHMARK(BM_solve_sigma_delta);

void BM_estimate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vrteh::estimate({51, 1.2}, {101, 1.0}, 0.95));
  }
}
BENCHMARK(BM_estimate);

void BM_draw_potential_outcomes(benchmark::State& state) {
  vrteh::ToyModelConfig cfg;
  cfg.n_units = state.range(0);
  cfg.n_treated = cfg.n_units / 2;
  vrteh::RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vrteh::draw_potential_outcomes(cfg, stream));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_units);
}
BENCHMARK(BM_draw_potential_outcomes)->Arg(1000)->Arg(10000);

void BM_run_replicate(benchmark::State& state) {
  vrteh::ToyModelConfig cfg;
  cfg.n_units = state.range(0);
  cfg.n_treated = cfg.n_units / 2;
  vrteh::RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vrteh::run_replicate(cfg, stream));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_units);
}
BENCHMARK(BM_run_replicate)->Arg(10000);

void BM_run_simulation_parallel(benchmark::State& state) {
  vrteh::ToyModelConfig cfg;
  cfg.n_units = 2000;
  cfg.n_treated = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        vrteh::run_simulation(cfg, 50, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_run_simulation_parallel)->Arg(1)->Arg(4);

void BM_propagate_uniform(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(vrteh::propagate(
        1.0, 1.0, vrteh::RhoPrior::uniform(-1.0, 0.0), state.range(0), 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_propagate_uniform)->Arg(10000);

void BM_summarize(benchmark::State& state) {
  const vrteh::SigmaDeltaPosterior post = vrteh::propagate(
      1.0, 1.0, vrteh::RhoPrior::uniform(-1.0, 0.0), 10000, 7);
  const std::vector<double> levels = {0.05, 0.25, 0.5, 0.75, 0.95};
  for (auto _ : state) {
    benchmark::DoNotOptimize(vrteh::summarize(post, levels));
  }
}
BENCHMARK(BM_summarize);

}  // namespace

BENCHMARK_MAIN();
