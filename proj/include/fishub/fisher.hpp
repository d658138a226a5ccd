#pragma once

#include "fishub/contingency.hpp"
#include "fishub/log_factorial.hpp"
#include "fishub/pvalue.hpp"

namespace fishub {

/// Term machinery shared by the exact p-value and its upper bounds.
///
/// For a table with cells a = m(XA), b = m(X¬A), c = m(¬XA), d = m(¬X¬A) the
/// one-sided p-value is p_0 + p_1 + ... + p_J, where p_i is the point
/// probability of the table with a+i in the XA cell and J = min(b, c).
/// Consecutive terms satisfy p_i = q_i p_{i-1} with
///
///     q_i = (b - i + 1)(c - i + 1) / ((a + i)(d + i)),
///
/// which is strictly decreasing in i. Only p_0 touches the log-factorial
/// table; everything else is built from q_i relative to p_0.
class TermEngine {
 public:
  /// Throws Error{OutOfRange} if `tbl` does not cover t.n().
  TermEngine(const ContingencyTable& t, const LogFactorialTable& tbl);

  const ContingencyTable& table() const noexcept { return table_; }
  Count j() const noexcept { return table_.j(); }

  /// ln p_0, the point probability of the observed table.
  double log_p0() const noexcept { return log_p0_; }
  /// ln(m(A)! m(¬A)! / n!), the factor common to every term.
  double log_p_abs() const noexcept { return log_p_abs_; }

  /// True iff the leverage is strictly positive.
  bool positive_dependency() const noexcept { return table_.scaled_leverage() > 0; }

  /// q_i for 1 <= i <= J. Throws Error{OutOfRange} otherwise.
  double q(Count i) const;
  /// 1 - q_i, formed from the exact integer difference of the products.
  double one_minus_q(Count i) const;

 private:
  void check_index(Count i) const;

  ContingencyTable table_;
  double log_p0_;
  double log_p_abs_;
};

/// p_F / p_0 = 1 + q_1 + q_1 q_2 + ... + q_1...q_J, compensated summation.
/// Throws Error{NegativeDependency} unless the leverage is positive.
double exact_multiplier(const TermEngine& e);

/// Exact one-sided p-value, evaluating all J+1 terms.
PValue exact_fisher(const TermEngine& e);

/// Convenience overload drawing log-factorials from the shared cache.
PValue exact_fisher(const ContingencyTable& t);

}  // namespace fishub
