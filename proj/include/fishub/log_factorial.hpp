#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "fishub/contingency.hpp"

namespace fishub {

/// Immutable table of ln(i!) for i = 0..max_n. Copies share storage.
class LogFactorialTable {
 public:
  LogFactorialTable();

  Count max_n() const noexcept { return static_cast<Count>(values_->size()) - 1; }
  double operator[](Count i) const noexcept { return (*values_)[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const noexcept { return *values_; }

 private:
  friend LogFactorialTable build_log_factorials(Count max_n, Count budget);
  explicit LogFactorialTable(std::shared_ptr<const std::vector<double>> values)
      : values_(std::move(values)) {}

  std::shared_ptr<const std::vector<double>> values_;
};

/// Largest max_n accepted by default (about 512 MiB of doubles).
inline constexpr Count kDefaultLogFactorialBudget = Count{1} << 26;

/// Builds ln(0!)..ln(max_n!) by a compensated running sum of ln(i), so every
/// entry is within a couple of ulps of the true value.
/// Throws Error{OutOfRange} for max_n < 0, Error{CapacityExceeded} above budget.
LogFactorialTable build_log_factorials(Count max_n, Count budget = kDefaultLogFactorialBudget);

/// ln C(n, k). Throws Error{OutOfRange} unless 0 <= k <= n <= tbl.max_n().
double log_binomial(const LogFactorialTable& tbl, Count n, Count k);

/// Grows a shared table on demand. Growth is geometric and serialized by a
/// mutex; callers receive immutable snapshots, so a snapshot obtained before a
/// growth stays valid and consistent afterwards.
class LogFactorialCache {
 public:
  explicit LogFactorialCache(Count budget = kDefaultLogFactorialBudget) : budget_(budget) {}

  /// Snapshot covering at least [0, n].
  LogFactorialTable snapshot(Count n);

  Count budget() const noexcept { return budget_; }

 private:
  Count budget_;
  std::mutex mutex_;
  LogFactorialTable table_;
};

/// Process-wide cache used by the convenience entry points.
LogFactorialCache& shared_log_factorials();

}  // namespace fishub
