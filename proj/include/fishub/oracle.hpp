#pragma once

#include <gmpxx.h>

#include "fishub/contingency.hpp"

namespace fishub::oracle {

/// Largest n accepted by the exact-rational routines.
inline constexpr Count kOracleMaxN = 20000;

/// Exact hypergeometric point probability of the table with `m_xa` in the XA
/// cell and the margins of `t`, as a big rational.
mpq_class point_probability(const ContingencyTable& t, Count m_xa);

/// Exact one-sided p-value: sum over i = 0..J of
/// C(m(X), m(XA)+i) C(m(¬X), m(¬X¬A)+i) / C(n, m(A)), in exact integer and
/// rational arithmetic. Independent of the floating ratio recurrence.
/// Throws Error{CapacityExceeded} for n > kOracleMaxN.
mpq_class exact_fisher(const ContingencyTable& t);

/// Natural log of a positive rational without passing through a double that
/// could underflow.
double log_of(const mpq_class& q);

}  // namespace fishub::oracle
