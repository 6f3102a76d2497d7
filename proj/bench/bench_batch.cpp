#include <benchmark/benchmark.h>

#include "boardeval/batch.hpp"

using namespace boardeval;

namespace {

BatchOptions options(const benchmark::State& state, bool render) {
  BatchOptions o;
  o.policy = state.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial;
  o.render = render;
  return o;
}

void BM_GenerateChess(benchmark::State& state) {
  const auto profile = task_profile(GameKind::Chess, TaskKind::Perceiving);
  for (auto _ : state) {
    auto v = generate_samples(GameKind::Chess, TaskKind::Perceiving, Seed{1}, 0, 64, profile, default_theme(),
                              options(state, true));
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_GenerateSudokuQA(benchmark::State& state) {
  const auto profile = task_profile(GameKind::Sudoku, TaskKind::QA);
  for (auto _ : state) {
    auto v = generate_samples(GameKind::Sudoku, TaskKind::QA, Seed{1}, 0, 64, profile, default_theme(),
                              options(state, false));
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * 64);
}

void BM_EvaluateRandomGomoku(benchmark::State& state) {
  const auto samples = generate_samples(GameKind::Gomoku, TaskKind::Perceiving, Seed{1}, 0, 256,
                                        task_profile(GameKind::Gomoku, TaskKind::Perceiving), default_theme(),
                                        {ExecPolicy::Parallel, 0, false});
  RandomAgent agent(Seed{9});
  for (auto _ : state) {
    auto r = evaluate_samples(samples, agent, options(state, false));
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}

}  // namespace

// Arg 0 = serial reference, 1 = OpenMP
BENCHMARK(BM_GenerateChess)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GenerateSudokuQA)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvaluateRandomGomoku)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
