#pragma once

#include "fishub/contingency.hpp"

namespace fishub {

struct Chi2Result {
  double statistic = 0.0;
  /// Signed sqrt(statistic): positive for positive leverage.
  double z = 0.0;
  double p_one_sided = 0.5;
  double min_expected = 0.0;
  /// Classical applicability rule: every expected count >= 5.
  bool rule_of_thumb_ok = false;
};

/// Q(z) = 1 - Phi(z) for the standard normal, via erfc.
double normal_upper_tail(double z) noexcept;

/// Uncorrected Pearson statistic n δ² / (x a (1-x)(1-a)) and its one-sided
/// p-value Q(sign(δ) sqrt(statistic)), i.e. half the χ²(1) tail in the
/// observed direction.
Chi2Result chi2_one_sided(const ContingencyTable& t, const DerivedStats& s);
Chi2Result chi2_one_sided(const ContingencyTable& t);

}  // namespace fishub
