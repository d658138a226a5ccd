#pragma once

#include <optional>

#include "fishub/contingency.hpp"
#include "fishub/fisher.hpp"
#include "fishub/pvalue.hpp"

namespace fishub {

/// Lift threshold (1 + sqrt 5) / 2 above which ub2 - p_F <= p_0.
inline constexpr double kGoldenRatio = 1.6180339887498948482;
/// Lift threshold above which ub1 - p_F <= p_0.
inline constexpr double kUb1LiftThreshold = 2.0;

/// Default number of exact leading terms for ub_k.
inline constexpr Count kDefaultK = 3;

// All bounds below are upper bounds on p_F for a positive dependency
// (leverage > 0) and throw Error{NegativeDependency} otherwise. The
// *_multiplier functions return the bound divided by p_0, unclamped; this is
// the scale on which the error theorems are stated and checked.
//
// Term-count convention for ub_k: k is the number of exact leading terms.
// The tail after p_{k-1} is bounded by a geometric series in q_k, so
//
//     ub_k = p_0 + ... + p_{k-2} + p_{k-1} (1 - q_k^{J-k+2}) / (1 - q_k).
//
// k = 1 is the geometric bound in q_1 (ub2 below), k = 3 is the usual "ub3",
// and any k >= J + 1 is exact.

/// p_0 (1 + P(X¬A)P(¬XA)/δ) evaluated through the leverage form
/// m(XA)m(¬X¬A) / (m(XA)m(¬X¬A) - m(X¬A)m(¬XA)).
double ub1_multiplier(const TermEngine& e);
PValue ub1(const TermEngine& e);

/// p_0 (1 - q_1^{J+1}) / (1 - q_1).
double ub2_multiplier(const TermEngine& e);
PValue ub2(const TermEngine& e);

/// Throws Error{InvalidK} for k < 1.
double ubk_multiplier(const TermEngine& e, Count k);
PValue ubk(const TermEngine& e, Count k);

/// p_0 q_1^2 / (1 - q_1); zero when J = 0.
double error_bound_ub2(const TermEngine& e);

/// p_0 q_k^2 / (1 - q_k) when k <= J, otherwise 0 (ub_k is exact).
double error_bound_ubk(const TermEngine& e, Count k);

/// Same as error_bound_ubk but scaled by p_{k-1} instead of p_0. Tighter;
/// the p_0-scaled form is what the published bound states.
double error_bound_ubk_tail_scaled(const TermEngine& e, Count k);

struct Guarantees {
  bool ub1_within_p0 = false;  // lift >= 2
  bool ub2_within_p0 = false;  // lift >= golden ratio
  /// Consequence of ub2_within_p0: ub2 <= 2 p_F.
  bool ub2_within_twice_exact = false;
};

Guarantees guarantees(const DerivedStats& s) noexcept;

struct ApproxReport {
  ContingencyTable table;
  DerivedStats stats;
  Count k = kDefaultK;
  std::optional<PValue> exact;
  PValue ub1;
  PValue ub2;
  PValue ubk;
  double log_p0 = 0.0;
  /// error_bound_ubk(k) in linear space.
  double error_bound = 0.0;
  Guarantees guarantee;

  bool any_clamped() const noexcept { return ub1.clamped || ub2.clamped || ubk.clamped; }
};

/// Full set of bounds for one table. The exact value is the O(J) path and is
/// computed only when `include_exact` is set.
ApproxReport report(const ContingencyTable& t, const LogFactorialTable& tbl, Count k, bool include_exact);

}  // namespace fishub
