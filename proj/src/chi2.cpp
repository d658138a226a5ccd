#include "fishub/chi2.hpp"

#include <cmath>
#include <numbers>

namespace fishub {

double normal_upper_tail(double z) noexcept {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

Chi2Result chi2_one_sided(const ContingencyTable& t, const DerivedStats& s) {
  Chi2Result r;
  // n (ad - bc)^2 / (m(X) m(A) m(¬X) m(¬A)), with ad - bc exact.
  const double lev = static_cast<double>(t.scaled_leverage());
  const double n = static_cast<double>(t.n());
  const double denom = static_cast<double>(t.m_x()) * static_cast<double>(t.m_a()) *
                       static_cast<double>(t.n() - t.m_x()) * static_cast<double>(t.n() - t.m_a());
  r.statistic = n * (lev / denom) * lev;
  r.z = std::copysign(std::sqrt(r.statistic), lev);
  if (lev == 0.0) {
    r.z = 0.0;
  }
  r.p_one_sided = normal_upper_tail(r.z);
  r.min_expected = s.min_expected();
  r.rule_of_thumb_ok = r.min_expected >= 5.0;
  return r;
}

Chi2Result chi2_one_sided(const ContingencyTable& t) {
  return chi2_one_sided(t, derive_stats(t));
}

}  // namespace fishub
