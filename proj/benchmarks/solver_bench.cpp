#include <benchmark/benchmark.h>

#include "sqpqc/generator.hpp"
#include "sqpqc/multi_solver.hpp"
#include "sqpqc/single_solver.hpp"

using namespace sqpqc;

static void BM_ConstraintResponse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = generate({n, 1, 1}).instance;
  const auto sub = aggregate(p, DualVector(1), 0);
  double lambda = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(constraint_response(sub, lambda));
    lambda += 1e-9;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ConstraintResponse)->RangeMultiplier(10)->Range(1000, 1000000);

static void BM_SolveSingle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = generate({n, 1, 2}).instance;
  const auto sub = aggregate(p, DualVector(1), 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_single(sub, 1e-6));
}
BENCHMARK(BM_SolveSingle)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

static void BM_Solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const auto p = generate({n, m, 3}).instance;
  int iterations = 0;
  for (auto _ : state) {
    const auto r = solve(p);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.objective);
  }
  state.counters["solves"] = iterations;
}
BENCHMARK(BM_Solve)
    ->Args({1000, 2})
    ->Args({10000, 2})
    ->Args({2000, 3})
    ->Args({2000, 5})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
