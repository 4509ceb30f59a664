// Copyright 2026 The cbi Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "cbi/cbi.hpp"

namespace {

const cbi::IntervalPartition& table_partition() {
  static const auto p = cbi::uniform_consistent_partition({0, 1e-6, 1e-4, 1});
  return p;
}

void BM_SolveGeneral(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbi::solve(table_partition(), 1.0, k, 46).phi_star);
  }
}
BENCHMARK(BM_SolveGeneral)->Arg(100)->Arg(52319)->Arg(10000000);

void BM_SolveNoFailure(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbi::solve(table_partition(), 0.0, 46860.0, 46).phi_star);
  }
}
BENCHMARK(BM_SolveNoFailure);

void BM_HInvertUpper(benchmark::State& state) {
  const auto ctx = cbi::make_hcontext(46, 52319.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cbi::h_invert_upper(ctx, 0.99).x);
}
BENCHMARK(BM_HInvertUpper);

void BM_PlanCbi(benchmark::State& state) {
  const auto r = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbi::plan_demands_cbi(table_partition(), 46, 0.009895, r).total_demands);
  }
}
BENCHMARK(BM_PlanCbi)->Arg(0)->Arg(1)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_GridOracle(benchmark::State& state) {
  cbi::GridOptions opts;
  opts.density = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cbi::grid_minimize(table_partition(), cbi::ObjectiveKind::standard(), 1.0, 5000.0, 46, opts)
            .phi_hat);
  }
}
BENCHMARK(BM_GridOracle)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
