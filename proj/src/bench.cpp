#include "fishub/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>

#include "fishub/bounds.hpp"
#include "fishub/fisher.hpp"
#include "fishub/log_factorial.hpp"

namespace fishub {
namespace {

using Clock = std::chrono::steady_clock;

volatile double g_sink = 0.0;

constexpr double kSampleTargetNs = 2e5;

template <class F>
double time_calls(F&& f, long iters) {
  double acc = 0.0;
  const auto start = Clock::now();
  for (long i = 0; i < iters; ++i) acc += f();
  const auto stop = Clock::now();
  g_sink = g_sink + acc;
  return std::chrono::duration<double, std::nano>(stop - start).count() / static_cast<double>(iters);
}

template <class F>
double median_ns(F&& f, int repetitions) {
  // Warmup doubles as calibration.
  const double estimate = std::max(time_calls(f, 1), time_calls(f, 1));
  const long iters = std::max(1L, static_cast<long>(kSampleTargetNs / std::max(estimate, 1.0)));
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) samples.push_back(time_calls(f, iters));
  auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
  std::nth_element(samples.begin(), mid, samples.end());
  return *mid;
}

}  // namespace

std::vector<BenchConfig> default_bench_configs() {
  std::vector<BenchConfig> out;
  for (Count n : {Count{1000}, Count{10000}, Count{100000}, Count{1000000}}) {
    const Count half = n / 2;
    out.push_back({n, half, half, half * 6 / 10});
  }
  return out;
}

std::vector<BenchResult> run_bench(const std::vector<BenchConfig>& configs, int repetitions) {
  std::vector<BenchResult> out;
  if (repetitions <= 0) return out;
  for (const BenchConfig& c : configs) {
    const ContingencyTable t = build_table(c.n, c.m_x, c.m_a, c.m_xa);
    const LogFactorialTable tbl = shared_log_factorials().snapshot(t.n());
    BenchResult r;
    r.config = c;
    r.j = t.j();
    r.exact_terms = exact_fisher(TermEngine(t, tbl)).terms_evaluated;
    r.exact_ns = median_ns([&] { return exact_fisher(TermEngine(t, tbl)).log_value; }, repetitions);
    r.ub1_ns = median_ns([&] { return ub1(TermEngine(t, tbl)).log_value; }, repetitions);
    r.ub2_ns = median_ns([&] { return ub2(TermEngine(t, tbl)).log_value; }, repetitions);
    r.ub3_ns = median_ns([&] { return ubk(TermEngine(t, tbl), 3).log_value; }, repetitions);
    out.push_back(r);
  }
  return out;
}

BenchVerdict judge_bench(const std::vector<BenchResult>& results) {
  BenchVerdict v;
  if (results.empty()) return v;
  const BenchResult& base = results.front();
  v.min_exact_growth = results.size() > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const BenchResult& r = results[i];
    v.max_bound_ratio = std::max({v.max_bound_ratio, r.ub1_ns / base.ub1_ns, r.ub2_ns / base.ub2_ns,
                                  r.ub3_ns / base.ub3_ns});
    if (i > 0) v.min_exact_growth = std::min(v.min_exact_growth, r.exact_ns / results[i - 1].exact_ns);
  }
  v.bounds_flat = v.max_bound_ratio <= kBoundFlatFactor;
  v.exact_grows = results.size() < 2 || v.min_exact_growth >= kExactGrowthFactor;
  return v;
}

void write_bench_report(const std::vector<BenchResult>& results, std::ostream& out) {
  char buf[200];
  out << "n,mx,ma,mxa,j,exact_terms,exact_ns,ub1_ns,ub2_ns,ub3_ns\n";
  for (const BenchResult& r : results) {
    std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%lld,%lld,%lld,%.1f,%.1f,%.1f,%.1f\n",
                  static_cast<long long>(r.config.n), static_cast<long long>(r.config.m_x),
                  static_cast<long long>(r.config.m_a), static_cast<long long>(r.config.m_xa),
                  static_cast<long long>(r.j), static_cast<long long>(r.exact_terms), r.exact_ns, r.ub1_ns,
                  r.ub2_ns, r.ub3_ns);
    out << buf;
  }
  if (results.empty()) return;
  const BenchVerdict v = judge_bench(results);
  std::snprintf(buf, sizeof buf, "bounds J-independent (max ratio %.2f <= %.1f): %s\n", v.max_bound_ratio,
                kBoundFlatFactor, v.bounds_flat ? "PASS" : "FAIL");
  out << buf;
  std::snprintf(buf, sizeof buf, "exact grows with J (min step ratio %.2f >= %.1f): %s\n", v.min_exact_growth,
                kExactGrowthFactor, v.exact_grows ? "PASS" : "FAIL");
  out << buf;
}

}  // namespace fishub
