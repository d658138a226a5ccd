#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fishub/contingency.hpp"

namespace fishub {

/// One printed row of the published comparison tables (n = 1000 and
/// n = 10000, three margin configurations each, three m(XA) values each).
struct PublishedRow {
  int table = 0;  // 2 or 3
  int case_no = 0;
  Count n = 0;
  Count m_x = 0;
  Count m_a = 0;
  Count m_xa = 0;
  // Values exactly as printed; the number of decimals sets the tolerance.
  std::string_view p_fisher;
  std::string_view ub1;
  std::string_view ub2;
  std::string_view ub3;
  std::string_view chi2;
  /// Replacement for a printed chi2 value known to be misprinted.
  std::string_view chi2_corrected;
};

/// The 18 published rows.
std::span<const PublishedRow> published_rows();

enum class CellStatus { Pass, Fail, Annotated };

struct CellCheck {
  std::string column;
  double expected = 0.0;  // value compared against (corrected value when annotated)
  double actual = 0.0;
  double tolerance = 0.0;
  CellStatus status = CellStatus::Pass;
};

struct RowCheck {
  PublishedRow row;
  std::array<CellCheck, 5> cells;  // p_fisher, ub1, ub2, ub3, chi2

  bool ok() const noexcept;
};

double printed_value(std::string_view printed);

/// Half a unit in the last printed decimal place: 5e-5 for "0.0569" or
/// "0.0096", 5e-6 for "0.00096".
double printed_tolerance(std::string_view printed);

inline constexpr double kChi2Tolerance = 1e-3;

struct ReproduceOptions {
  std::optional<int> table;
  std::optional<int> case_no;
  /// Overrides printed_tolerance() for p_fisher and the ub columns.
  std::optional<double> tolerance;
};

std::vector<RowCheck> check_rows(std::span<const PublishedRow> rows, const ReproduceOptions& opts);

/// Writes the per-cell report; returns true iff no non-annotated cell failed.
bool write_reproduction_report(const std::vector<RowCheck>& checks, std::ostream& out);

}  // namespace fishub
