#include "fishub/contingency.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#include "fishub/error.hpp"

namespace fishub {

__int128 ContingencyTable::scaled_leverage() const noexcept {
  return static_cast<__int128>(m_xa()) * m_nx_na() - static_cast<__int128>(m_x_na()) * m_nx_a();
}

ContingencyTable build_table(Count n, Count m_x, Count m_a, Count m_xa) {
  auto describe = [&] {
    return "(n=" + std::to_string(n) + ", mx=" + std::to_string(m_x) + ", ma=" + std::to_string(m_a) +
           ", mxa=" + std::to_string(m_xa) + ")";
  };
  if (n <= 0 || m_x < 0 || m_a < 0 || m_xa < 0 || m_x > n || m_a > n) {
    throw Error(ErrorCode::MarginViolation, "counts out of range " + describe());
  }
  if (m_x == 0 || m_x == n || m_a == 0 || m_a == n) {
    throw Error(ErrorCode::DegenerateMargin, "margin equals 0 or n " + describe());
  }
  const Count lo = std::max<Count>(0, m_x + m_a - n);
  const Count hi = std::min(m_x, m_a);
  if (m_xa < lo || m_xa > hi) {
    throw Error(ErrorCode::MarginViolation, "m(XA) outside [" + std::to_string(lo) + ", " +
                                                std::to_string(hi) + "] " + describe());
  }
  return ContingencyTable(n, m_x, m_a, m_xa);
}

ContingencyTable negate_consequent(const ContingencyTable& t) {
  ContingencyTable out = build_table(t.n(), t.m_x(), t.n() - t.m_a(), t.m_x() - t.m_xa());
  assert(out.scaled_leverage() == -t.scaled_leverage());
  return out;
}

double DerivedStats::min_expected() const noexcept {
  return *std::min_element(expected.begin(), expected.end());
}

DerivedStats derive_stats(const ContingencyTable& t) {
  DerivedStats s;
  const double n = static_cast<double>(t.n());
  s.x = static_cast<double>(t.m_x()) / n;
  s.a = static_cast<double>(t.m_a()) / n;

  // Single rounding from exact integer numerators.
  const __int128 margin_product = static_cast<__int128>(t.m_x()) * t.m_a();
  s.lift = static_cast<double>(static_cast<__int128>(t.m_xa()) * t.n()) /
           static_cast<double>(margin_product);
  s.leverage = static_cast<double>(t.scaled_leverage()) / (n * n);

  const __int128 diag = static_cast<__int128>(t.m_xa()) * t.m_nx_na();
  const __int128 off = static_cast<__int128>(t.m_x_na()) * t.m_nx_a();
  if (off == 0) {
    s.odds_infinite = true;
    s.odds_ratio = std::numeric_limits<double>::infinity();
  } else {
    s.odds_ratio = static_cast<double>(diag) / static_cast<double>(off);
  }
  s.j = t.j();

  const double mx = static_cast<double>(t.m_x());
  const double ma = static_cast<double>(t.m_a());
  const double mnx = n - mx;
  const double mna = n - ma;
  s.expected = {mx * ma / n, mx * mna / n, mnx * ma / n, mnx * mna / n};
  return s;
}

}  // namespace fishub
