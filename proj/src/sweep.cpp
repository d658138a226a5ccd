#include "fishub/sweep.hpp"

#include <algorithm>
#include <ostream>

#include "fishub/error.hpp"
#include "fishub/log_factorial.hpp"

namespace fishub {

std::vector<Count> extra_ks(const SweepSpec& spec) {
  std::vector<Count> out;
  for (Count k : spec.ks) {
    if (k < 1) throw Error(ErrorCode::InvalidK, "k must be >= 1, got " + std::to_string(k));
    if (k != 3 && std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
  if (spec.from > spec.to) {
    throw Error(ErrorCode::OutOfRange, "sweep range is empty: from > to");
  }
  build_table(spec.n, spec.m_x, spec.m_a, spec.from);
  build_table(spec.n, spec.m_x, spec.m_a, spec.to);
  const std::vector<Count> extras = extra_ks(spec);
  const LogFactorialTable tbl = shared_log_factorials().snapshot(spec.n);

  std::vector<SweepPoint> points;
  points.reserve(static_cast<std::size_t>(spec.to - spec.from + 1));
  for (Count m = spec.from; m <= spec.to; ++m) {
    const ContingencyTable t = build_table(spec.n, spec.m_x, spec.m_a, m);
    if (t.scaled_leverage() <= 0) {
      throw Error(ErrorCode::NegativeDependency,
                  "m(XA)=" + std::to_string(m) + " is not a positive dependency; start the range above n*P(X)*P(A)");
    }
    ApproxReport rep = report(t, tbl, 3, spec.include_exact);
    const Chi2Result chi = chi2_one_sided(t, rep.stats);
    SweepPoint p{BatchRecord{std::to_string(m), t, std::move(rep), chi}, {}};
    const TermEngine e(t, tbl);
    for (Count k : extras) p.extra.push_back(ubk(e, k));
    points.push_back(std::move(p));
  }
  return points;
}

std::string sweep_header(const SweepSpec& spec) {
  std::string h = "mxa,j,terms,lift,leverage,p_fisher,ub1,ub2,ub3";
  for (Count k : extra_ks(spec)) h += ",ub" + std::to_string(k);
  h += ",chi2_p";
  return h;
}

std::string format_sweep_row(const SweepPoint& p) {
  const BatchRecord& r = p.record;
  const ApproxReport& rep = r.report;
  std::string s = std::to_string(r.table.m_xa()) + ',' + std::to_string(r.table.j()) + ',' +
                  std::to_string(r.table.j() + 1) + ',' + format_value(rep.stats.lift) + ',' +
                  format_value(rep.stats.leverage) + ',' +
                  (rep.exact ? format_value(rep.exact->linear_value) : "") + ',' +
                  format_value(rep.ub1.linear_value) + ',' + format_value(rep.ub2.linear_value) + ',' +
                  format_value(rep.ubk.linear_value);
  for (const PValue& v : p.extra) s += ',' + format_value(v.linear_value);
  s += ',' + format_value(r.chi2.p_one_sided);
  return s;
}

void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepPoint>& points, std::ostream& out) {
  out << sweep_header(spec) << '\n';
  for (const auto& p : points) out << format_sweep_row(p) << '\n';
}

}  // namespace fishub
