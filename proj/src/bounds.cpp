#include "fishub/bounds.hpp"

#include <cmath>
#include <string>

#include "fishub/detail/compensated_sum.hpp"
#include "fishub/error.hpp"

namespace fishub {
namespace {

void require_positive(const TermEngine& e, const char* what) {
  if (!e.positive_dependency()) {
    throw Error(ErrorCode::NegativeDependency, std::string(what) + " requires positive leverage");
  }
}

void require_valid_k(Count k) {
  if (k < 1) {
    throw Error(ErrorCode::InvalidK, "k must be >= 1, got " + std::to_string(k));
  }
}

// (1 - q^count) / (1 - q) given u = 1 - q. Stable for q near 1 and for q^count
// underflowing, where it tends to 1/u.
double geometric_factor(double u, Count count) {
  if (count <= 1) {
    return 1.0;
  }
  if (!(u > 0.0)) {
    throw Error(ErrorCode::Internal, "term ratio not below 1 under positive dependency");
  }
  if (u >= 1.0) {
    return 1.0;  // q = 0: only the leading term survives
  }
  return -std::expm1(static_cast<double>(count) * std::log1p(-u)) / u;
}

}  // namespace

double ub1_multiplier(const TermEngine& e) {
  require_positive(e, "ub1");
  const ContingencyTable& t = e.table();
  const __int128 diag = static_cast<__int128>(t.m_xa()) * t.m_nx_na();
  return static_cast<double>(diag) / static_cast<double>(t.scaled_leverage());
}

PValue ub1(const TermEngine& e) {
  return PValue::from_log(e.log_p0() + std::log(ub1_multiplier(e)), 1);
}

double ub2_multiplier(const TermEngine& e) {
  require_positive(e, "ub2");
  if (e.j() == 0) {
    return 1.0;
  }
  return geometric_factor(e.one_minus_q(1), e.j() + 1);
}

PValue ub2(const TermEngine& e) {
  return PValue::from_log(e.log_p0() + std::log(ub2_multiplier(e)), 1);
}

double ubk_multiplier(const TermEngine& e, Count k) {
  require_valid_k(k);
  require_positive(e, "ub_k");
  const Count j = e.j();
  const Count l = k - 1;  // index of the last exact term
  if (l > j) {
    return exact_multiplier(e);
  }
  detail::CompensatedSum sum;
  double term = 1.0;
  for (Count i = 0; i < l; ++i) {
    sum.add(term);
    term *= e.q(i + 1);
  }
  const double tail = l == j ? 1.0 : geometric_factor(e.one_minus_q(l + 1), j - l + 1);
  sum.add(term * tail);
  return sum.value();
}

PValue ubk(const TermEngine& e, Count k) {
  const double m = ubk_multiplier(e, k);
  return PValue::from_log(e.log_p0() + std::log(m), std::min(k, e.j() + 1));
}

double error_bound_ub2(const TermEngine& e) {
  return error_bound_ubk(e, 1);
}

double error_bound_ubk(const TermEngine& e, Count k) {
  require_valid_k(k);
  require_positive(e, "error bound");
  if (k > e.j()) {
    return 0.0;
  }
  const double q = e.q(k);
  return std::exp(e.log_p0() + 2.0 * std::log(q) - std::log(e.one_minus_q(k)));
}

double error_bound_ubk_tail_scaled(const TermEngine& e, Count k) {
  require_valid_k(k);
  require_positive(e, "error bound");
  if (k > e.j()) {
    return 0.0;
  }
  double log_term = e.log_p0();
  for (Count i = 1; i < k; ++i) {
    log_term += std::log(e.q(i));
  }
  const double q = e.q(k);
  return std::exp(log_term + 2.0 * std::log(q) - std::log(e.one_minus_q(k)));
}

Guarantees guarantees(const DerivedStats& s) noexcept {
  Guarantees g;
  g.ub1_within_p0 = s.lift >= kUb1LiftThreshold;
  g.ub2_within_p0 = s.lift >= kGoldenRatio;
  g.ub2_within_twice_exact = g.ub2_within_p0;
  return g;
}

ApproxReport report(const ContingencyTable& t, const LogFactorialTable& tbl, Count k, bool include_exact) {
  require_valid_k(k);
  const TermEngine e(t, tbl);
  require_positive(e, "report");
  const DerivedStats stats = derive_stats(t);
  return ApproxReport{
      .table = t,
      .stats = stats,
      .k = k,
      .exact = include_exact ? std::optional<PValue>(exact_fisher(e)) : std::nullopt,
      .ub1 = ub1(e),
      .ub2 = ub2(e),
      .ubk = ubk(e, k),
      .log_p0 = e.log_p0(),
      .error_bound = error_bound_ubk(e, k),
      .guarantee = guarantees(stats),
  };
}

}  // namespace fishub
