#pragma once

#include <iosfwd>
#include <vector>

#include "fishub/contingency.hpp"

namespace fishub {

struct BenchConfig {
  Count n = 0;
  Count m_x = 0;
  Count m_a = 0;
  Count m_xa = 0;
};

/// m(X) = m(A) = n/2 and m(XA) = 0.6 m(X) for n = 10^3 .. 10^6, so J = n/5
/// spans three orders of magnitude. The largest is the 200 001-term case.
std::vector<BenchConfig> default_bench_configs();

struct BenchResult {
  BenchConfig config;
  Count j = 0;
  Count exact_terms = 0;
  // Median nanoseconds per call, including TermEngine construction.
  double exact_ns = 0.0;
  double ub1_ns = 0.0;
  double ub2_ns = 0.0;
  double ub3_ns = 0.0;
};

/// Median of `repetitions` timed samples per method after one warmup sample.
/// Returns an empty vector when repetitions == 0.
std::vector<BenchResult> run_bench(const std::vector<BenchConfig>& configs, int repetitions);

/// Harness constants for the constant-time property.
inline constexpr double kBoundFlatFactor = 2.0;
inline constexpr double kExactGrowthFactor = 1.5;

struct BenchVerdict {
  /// Largest bound time relative to the same bound at the smallest J.
  double max_bound_ratio = 1.0;
  /// Smallest ratio of exact time between consecutive configs (J increasing).
  double min_exact_growth = 0.0;
  bool bounds_flat = true;
  bool exact_grows = true;

  bool ok() const noexcept { return bounds_flat && exact_grows; }
};

/// Results must be sorted by increasing J with each step at least doubling J.
BenchVerdict judge_bench(const std::vector<BenchResult>& results);

void write_bench_report(const std::vector<BenchResult>& results, std::ostream& out);

}  // namespace fishub
