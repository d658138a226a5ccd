// Serial vs OpenMP batch evaluation, and exact p_F vs the constant-time bounds.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fishub/batch.hpp"
#include "fishub/bounds.hpp"
#include "fishub/fisher.hpp"

namespace {

using namespace fishub;

std::vector<InputRow> make_rows(std::size_t count) {
  std::mt19937_64 rng(99);
  std::vector<InputRow> rows;
  while (rows.size() < count) {
    const Count n = std::uniform_int_distribution<Count>(1000, 20000)(rng);
    const Count mx = std::uniform_int_distribution<Count>(1, n - 1)(rng);
    const Count ma = std::uniform_int_distribution<Count>(1, n - 1)(rng);
    const Count lo = std::max<Count>(0, mx + ma - n);
    const Count hi = std::min(mx, ma);
    const Count mxa = std::uniform_int_distribution<Count>((lo + hi) / 2, hi)(rng);
    rows.push_back({rows.size() + 2, "r" + std::to_string(rows.size()), n, mx, ma, mxa});
  }
  return rows;
}

const std::vector<InputRow>& rows() {
  static const auto r = make_rows(4000);
  return r;
}

void BM_BatchSerial(benchmark::State& state) {
  BatchOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_rows_serial(rows(), opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows().size()));
}
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);

void BM_BatchParallel(benchmark::State& state) {
  BatchOptions opts;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_rows_parallel(rows(), opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows().size()));
}
BENCHMARK(BM_BatchParallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

// n = 1000 * 10^k, m(X) = m(A) = n/2, m(XA) = 0.6 m(X); J = n/5.
TermEngine engine_for(std::int64_t n) {
  const auto& lt = shared_log_factorials().snapshot(n);
  return TermEngine(build_table(n, n / 2, n / 2, 3 * n / 10), lt);
}

void BM_Exact(benchmark::State& state) {
  const auto e = engine_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_fisher(e));
  state.counters["terms"] = static_cast<double>(e.j() + 1);
}

void BM_Ub1(benchmark::State& state) {
  const auto e = engine_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ub1(e));
}

void BM_Ub2(benchmark::State& state) {
  const auto e = engine_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ub2(e));
}

void BM_Ub3(benchmark::State& state) {
  const auto e = engine_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ubk(e, 3));
}

BENCHMARK(BM_Exact)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_Ub1)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_Ub2)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_Ub3)->RangeMultiplier(10)->Range(1000, 1000000);

}  // namespace

BENCHMARK_MAIN();
