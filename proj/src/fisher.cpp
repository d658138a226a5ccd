#include "fishub/fisher.hpp"

#include <cmath>
#include <string>

#include "fishub/detail/compensated_sum.hpp"
#include "fishub/error.hpp"

namespace fishub {

TermEngine::TermEngine(const ContingencyTable& t, const LogFactorialTable& tbl) : table_(t) {
  log_p0_ = log_binomial(tbl, t.m_x(), t.m_xa()) + log_binomial(tbl, t.n() - t.m_x(), t.m_nx_na()) -
            log_binomial(tbl, t.n(), t.m_a());
  log_p_abs_ = tbl[t.m_a()] + tbl[t.n() - t.m_a()] - tbl[t.n()];
}

void TermEngine::check_index(Count i) const {
  if (i < 1 || i > j()) {
    throw Error(ErrorCode::OutOfRange,
                "term ratio index " + std::to_string(i) + " outside [1, " + std::to_string(j()) + "]");
  }
}

double TermEngine::q(Count i) const {
  check_index(i);
  const __int128 num = static_cast<__int128>(table_.m_x_na() - i + 1) * (table_.m_nx_a() - i + 1);
  const __int128 den = static_cast<__int128>(table_.m_xa() + i) * (table_.m_nx_na() + i);
  return static_cast<double>(num) / static_cast<double>(den);
}

double TermEngine::one_minus_q(Count i) const {
  check_index(i);
  const __int128 num = static_cast<__int128>(table_.m_x_na() - i + 1) * (table_.m_nx_a() - i + 1);
  const __int128 den = static_cast<__int128>(table_.m_xa() + i) * (table_.m_nx_na() + i);
  return static_cast<double>(den - num) / static_cast<double>(den);
}

double exact_multiplier(const TermEngine& e) {
  if (!e.positive_dependency()) {
    throw Error(ErrorCode::NegativeDependency, "exact p-value requires positive leverage");
  }
  detail::CompensatedSum sum(1.0);
  double term = 1.0;
  for (Count i = 1; i <= e.j(); ++i) {
    term *= e.q(i);
    sum.add(term);
  }
  return sum.value();
}

PValue exact_fisher(const TermEngine& e) {
  const double s = exact_multiplier(e);
  return PValue::from_log(e.log_p0() + std::log(s), e.j() + 1);
}

PValue exact_fisher(const ContingencyTable& t) {
  return exact_fisher(TermEngine(t, shared_log_factorials().snapshot(t.n())));
}

}  // namespace fishub
