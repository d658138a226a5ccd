#include "fishub/reproduce.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fishub/bounds.hpp"
#include "fishub/chi2.hpp"
#include "fishub/log_factorial.hpp"

namespace fishub {
namespace {

// clang-format off
constexpr PublishedRow kRows[] = {
    {2, 1, 1000, 500, 500, 263, "0.0569", "0.0696", "0.0674", "0.0617", "0.050", {}},
    {2, 1, 1000, 500, 500, 269, "0.0096", "0.0107", "0.0105", "0.0100", "0.0081", {}},
    {2, 1, 1000, 500, 500, 275, "0.00096", "0.00103", "0.00101", "0.00100", "0.00080", {}},
    {2, 2, 1000, 200, 250, 60, "0.0429", "0.0508", "0.0484", "0.0447", "0.0340", {}},
    {2, 2, 1000, 200, 250, 63, "0.0123", "0.0137", "0.0132", "0.0125", "0.088", "0.0088"},
    {2, 2, 1000, 200, 250, 68, "0.00089", "0.00094", "0.00092", "0.00089", "0.00050", {}},
    {2, 3, 1000, 50, 200, 15, "0.0559", "0.0655", "0.0605", "0.0565", "0.0349", {}},
    {2, 3, 1000, 50, 200, 17, "0.0123", "0.0135", "0.0128", "0.0124", "0.0056", {}},
    {2, 3, 1000, 50, 200, 19, "0.00194", "0.00205", "0.00198", "0.00194", "0.00050", {}},
    {3, 1, 10000, 5000, 5000, 2541, "0.0526", "0.0655", "0.0647", "0.0621", "0.0505", {}},
    {3, 1, 10000, 5000, 5000, 2559, "0.0096", "0.0109", "0.0109", "0.0106", "0.0091", {}},
    {3, 1, 10000, 5000, 5000, 2578, "0.00097", "0.00105", "0.00104", "0.00102", "0.00090", {}},
    {3, 2, 10000, 2000, 2500, 529, "0.0504", "0.0623", "0.0611", "0.0579", "0.047", {}},
    {3, 2, 10000, 2000, 2500, 541, "0.0100", "0.0113", "0.0112", "0.0108", "0.0090", {}},
    {3, 2, 10000, 2000, 2500, 554, "0.00109", "0.00118", "0.00116", "0.00114", "0.00090", {}},
    {3, 3, 10000, 500, 2000, 115, "0.0498", "0.0608", "0.0583", "0.0541", "0.0427", {}},
    {3, 3, 10000, 500, 2000, 121, "0.0105", "0.0118", "0.0115", "0.0109", "0.0080", {}},
    {3, 3, 10000, 500, 2000, 128, "0.00106", "0.00114", "0.00112", "0.00108", "0.00070", {}},
};
// clang-format on

const char* status_name(CellStatus s) {
  switch (s) {
    case CellStatus::Pass: return "PASS";
    case CellStatus::Fail: return "FAIL";
    case CellStatus::Annotated: return "ANNOTATED";
  }
  return "?";
}

CellCheck check_cell(const char* column, std::string_view printed, double actual, double tol) {
  const double expected = printed_value(printed);
  return {column, expected, actual, tol, std::abs(actual - expected) <= tol ? CellStatus::Pass : CellStatus::Fail};
}

}  // namespace

std::span<const PublishedRow> published_rows() { return kRows; }

double printed_value(std::string_view printed) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(printed.data(), printed.data() + printed.size(), v);
  if (ec != std::errc() || ptr != printed.data() + printed.size()) {
    throw std::invalid_argument("bad printed value '" + std::string(printed) + "'");
  }
  return v;
}

double printed_tolerance(std::string_view printed) {
  const std::size_t dot = printed.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  return 0.5 * std::pow(10.0, -decimals);
}

bool RowCheck::ok() const noexcept {
  for (const auto& c : cells) {
    if (c.status == CellStatus::Fail) return false;
  }
  return true;
}

std::vector<RowCheck> check_rows(std::span<const PublishedRow> rows, const ReproduceOptions& opts) {
  std::vector<RowCheck> out;
  for (const PublishedRow& row : rows) {
    if (opts.table && *opts.table != row.table) continue;
    if (opts.case_no && *opts.case_no != row.case_no) continue;
    const ContingencyTable t = build_table(row.n, row.m_x, row.m_a, row.m_xa);
    const LogFactorialTable tbl = shared_log_factorials().snapshot(t.n());
    const ApproxReport rep = report(t, tbl, 3, true);
    const Chi2Result chi = chi2_one_sided(t, rep.stats);
    auto tol = [&](std::string_view printed) { return opts.tolerance ? *opts.tolerance : printed_tolerance(printed); };

    RowCheck rc{row, {}};
    rc.cells[0] = check_cell("p_fisher", row.p_fisher, rep.exact->linear_value, tol(row.p_fisher));
    rc.cells[1] = check_cell("ub1", row.ub1, rep.ub1.linear_value, tol(row.ub1));
    rc.cells[2] = check_cell("ub2", row.ub2, rep.ub2.linear_value, tol(row.ub2));
    rc.cells[3] = check_cell("ub3", row.ub3, rep.ubk.linear_value, tol(row.ub3));
    if (!row.chi2_corrected.empty()) {
      rc.cells[4] = check_cell("chi2_p", row.chi2_corrected, chi.p_one_sided, kChi2Tolerance);
      if (rc.cells[4].status == CellStatus::Pass) rc.cells[4].status = CellStatus::Annotated;
    } else {
      rc.cells[4] = check_cell("chi2_p", row.chi2, chi.p_one_sided, kChi2Tolerance);
    }
    out.push_back(rc);
  }
  return out;
}

bool write_reproduction_report(const std::vector<RowCheck>& checks, std::ostream& out) {
  bool all_ok = true;
  std::size_t failed_cells = 0;
  std::size_t annotated_cells = 0;
  char buf[256];
  for (const RowCheck& rc : checks) {
    const PublishedRow& r = rc.row;
    std::snprintf(buf, sizeof buf, "table %d case %d n=%lld mx=%lld ma=%lld mxa=%lld: %s\n", r.table, r.case_no,
                  static_cast<long long>(r.n), static_cast<long long>(r.m_x), static_cast<long long>(r.m_a),
                  static_cast<long long>(r.m_xa), rc.ok() ? "PASS" : "FAIL");
    out << buf;
    for (const CellCheck& c : rc.cells) {
      std::snprintf(buf, sizeof buf, "  %-9s expected %-9.6g actual %-11.6g |diff| %.2e tol %.1e %s\n",
                    c.column.c_str(), c.expected, c.actual, std::abs(c.actual - c.expected), c.tolerance,
                    status_name(c.status));
      out << buf;
      if (c.status == CellStatus::Fail) ++failed_cells;
      if (c.status == CellStatus::Annotated) {
        ++annotated_cells;
        std::snprintf(buf, sizeof buf, "  note: printed chi2 value %.6g presumed misprint, checked against %.6g\n",
                      printed_value(r.chi2), c.expected);
        out << buf;
      }
    }
    all_ok = all_ok && rc.ok();
  }
  std::snprintf(buf, sizeof buf, "%zu rows, %zu failed cells, %zu annotated cells: %s\n", checks.size(),
                failed_cells, annotated_cells, all_ok ? "PASS" : "FAIL");
  out << buf;
  return all_ok;
}

}  // namespace fishub
