#pragma once

#include <array>
#include <cstdint>

namespace fishub {

using Count = std::int64_t;

/// Validated 2x2 table for a rule X -> A.
///
/// Stores the data size and the three frequencies m(X), m(A), m(XA); the
/// remaining cells follow by integer arithmetic. Instances can only be
/// obtained through build_table() (or negate_consequent()), so every live
/// object satisfies 0 < m(X) < n, 0 < m(A) < n and non-negative cells.
class ContingencyTable {
 public:
  Count n() const noexcept { return n_; }
  Count m_x() const noexcept { return m_x_; }
  Count m_a() const noexcept { return m_a_; }
  Count m_xa() const noexcept { return m_xa_; }

  /// m(X, not A)
  Count m_x_na() const noexcept { return m_x_ - m_xa_; }
  /// m(not X, A)
  Count m_nx_a() const noexcept { return m_a_ - m_xa_; }
  /// m(not X, not A)
  Count m_nx_na() const noexcept { return n_ - m_x_ - m_a_ + m_xa_; }

  /// Number of tables more extreme than the observed one: min(m(X¬A), m(¬XA)).
  Count j() const noexcept { return m_x_na() < m_nx_a() ? m_x_na() : m_nx_a(); }

  /// n^2 times the leverage, as an exact integer: m(XA)m(¬X¬A) - m(X¬A)m(¬XA).
  __int128 scaled_leverage() const noexcept;

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

 private:
  friend ContingencyTable build_table(Count n, Count m_x, Count m_a, Count m_xa);
  ContingencyTable(Count n, Count m_x, Count m_a, Count m_xa) noexcept
      : n_(n), m_x_(m_x), m_a_(m_a), m_xa_(m_xa) {}

  Count n_;
  Count m_x_;
  Count m_a_;
  Count m_xa_;
};

/// Throws Error{DegenerateMargin} when m(X) or m(A) is 0 or n, and
/// Error{MarginViolation} for any other cell bound violation.
ContingencyTable build_table(Count n, Count m_x, Count m_a, Count m_xa);

/// Table of the rule X -> ¬A.
ContingencyTable negate_consequent(const ContingencyTable& t);

struct DerivedStats {
  double x = 0.0;         // P(X)
  double a = 0.0;         // P(A)
  double lift = 0.0;      // P(XA) / (P(X)P(A))
  double leverage = 0.0;  // P(XA) - P(X)P(A)
  double odds_ratio = 0.0;
  bool odds_infinite = false;
  Count j = 0;
  /// nP(X)P(A), nP(X)P(¬A), nP(¬X)P(A), nP(¬X)P(¬A)
  std::array<double, 4> expected{};

  double min_expected() const noexcept;
};

DerivedStats derive_stats(const ContingencyTable& t);

}  // namespace fishub
