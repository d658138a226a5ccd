#include "fishub/log_factorial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fishub/error.hpp"

namespace fishub {

LogFactorialTable::LogFactorialTable()
    : values_(std::make_shared<const std::vector<double>>(std::vector<double>{0.0})) {}

LogFactorialTable build_log_factorials(Count max_n, Count budget) {
  if (max_n < 0) {
    throw Error(ErrorCode::OutOfRange, "log-factorial size must be non-negative");
  }
  if (max_n > budget) {
    throw Error(ErrorCode::CapacityExceeded, "log-factorial table of size " + std::to_string(max_n) +
                                                 " exceeds budget " + std::to_string(budget));
  }
  std::vector<double> values(static_cast<std::size_t>(max_n) + 1);
  values[0] = 0.0;
  // Neumaier summation: sum + comp carries the running total to ~1 ulp.
  double sum = 0.0;
  double comp = 0.0;
  for (Count i = 1; i <= max_n; ++i) {
    const double term = std::log(static_cast<double>(i));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    values[static_cast<std::size_t>(i)] = sum + comp;
  }
  return LogFactorialTable(std::make_shared<const std::vector<double>>(std::move(values)));
}

double log_binomial(const LogFactorialTable& tbl, Count n, Count k) {
  if (k < 0 || k > n || n > tbl.max_n()) {
    throw Error(ErrorCode::OutOfRange, "log_binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                           ") outside table of size " + std::to_string(tbl.max_n()));
  }
  const Count lo = std::min(k, n - k);
  return tbl[n] - tbl[n - lo] - tbl[lo];
}

LogFactorialTable LogFactorialCache::snapshot(Count n) {
  std::lock_guard lock(mutex_);
  if (table_.max_n() < n) {
    if (n > budget_) {
      throw Error(ErrorCode::CapacityExceeded, "log-factorial table of size " + std::to_string(n) +
                                                   " exceeds budget " + std::to_string(budget_));
    }
    const Count grown = std::clamp<Count>(2 * table_.max_n(), n, budget_);
    table_ = build_log_factorials(std::max(grown, n), budget_);
  }
  return table_;
}

LogFactorialCache& shared_log_factorials() {
  static LogFactorialCache cache;
  return cache;
}

}  // namespace fishub
