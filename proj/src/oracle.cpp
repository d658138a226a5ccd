#include "fishub/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fishub/error.hpp"

namespace fishub::oracle {
namespace {

void check_capacity(const ContingencyTable& t) {
  if (t.n() > kOracleMaxN) {
    throw Error(ErrorCode::CapacityExceeded,
                "oracle limited to n <= " + std::to_string(kOracleMaxN) + ", got " + std::to_string(t.n()));
  }
}

mpz_class binomial(Count n, Count k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

double log_of(const mpz_class& z) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

}  // namespace

mpq_class point_probability(const ContingencyTable& t, Count m_xa) {
  check_capacity(t);
  const Count m_nx_na = t.n() - t.m_x() - t.m_a() + m_xa;
  mpq_class p(binomial(t.m_x(), m_xa) * binomial(t.n() - t.m_x(), m_nx_na), binomial(t.n(), t.m_a()));
  p.canonicalize();
  return p;
}

mpq_class exact_fisher(const ContingencyTable& t) {
  check_capacity(t);
  const Count m_nx = t.n() - t.m_x();
  // Walk the two binomials upward with exact integer updates:
  // C(m, r+1) = C(m, r) (m - r) / (r + 1), the division being exact.
  mpz_class left = binomial(t.m_x(), t.m_xa());
  mpz_class right = binomial(m_nx, t.m_nx_na());
  mpz_class numerator = left * right;
  Count r_left = t.m_xa();
  Count r_right = t.m_nx_na();
  for (Count i = 1; i <= t.j(); ++i) {
    left *= static_cast<unsigned long>(t.m_x() - r_left);
    mpz_divexact_ui(left.get_mpz_t(), left.get_mpz_t(), static_cast<unsigned long>(r_left + 1));
    ++r_left;
    right *= static_cast<unsigned long>(m_nx - r_right);
    mpz_divexact_ui(right.get_mpz_t(), right.get_mpz_t(), static_cast<unsigned long>(r_right + 1));
    ++r_right;
    numerator += left * right;
  }
  mpq_class p(numerator, binomial(t.n(), t.m_a()));
  p.canonicalize();
  return p;
}

double log_of(const mpq_class& q) {
  return log_of(mpz_class(q.get_num())) - log_of(mpz_class(q.get_den()));
}

}  // namespace fishub::oracle
