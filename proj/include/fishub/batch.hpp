#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishub/bounds.hpp"
#include "fishub/chi2.hpp"
#include "fishub/contingency.hpp"

namespace fishub {

/// One data line of an `id,n,mx,ma,mxa` input file, before validation.
struct InputRow {
  std::size_t line = 0;  // 1-based line number in the source
  std::string id;
  Count n = 0;
  Count m_x = 0;
  Count m_a = 0;
  Count m_xa = 0;
};

struct Reject {
  std::size_t line = 0;
  std::string id;
  std::string reason;  // MALFORMED, MARGIN_VIOLATION, ...
  std::string detail;
};

struct ParsedInput {
  std::vector<InputRow> rows;
  std::vector<Reject> rejects;
};

inline constexpr std::string_view kInputHeader = "id,n,mx,ma,mxa";
inline constexpr std::string_view kOutputHeader =
    "id,n,mx,ma,mxa,j,lift,leverage,odds,p_fisher,ub1,ub2,ubk,k,err_bound,chi2_p,min_expected,"
    "guarantee_ub1,guarantee_ub2,clamped";
inline constexpr std::string_view kRejectsHeader = "line,id,reason,detail";
inline constexpr std::string_view kLogKeysHeader = "id,log_p_fisher,log_ub1,log_ub2,log_ubk";

/// Parses an input table file. LF and CRLF line endings are accepted. A
/// missing or wrong header throws std::runtime_error; bad data lines become
/// MALFORMED rejects.
ParsedInput parse_input_csv(std::istream& in);

struct BatchOptions {
  Count k = kDefaultK;
  bool include_exact = true;
  /// Evaluate X -> ¬A for every row.
  bool negate = false;
  int jobs = 1;
};

struct BatchRecord {
  std::string id;
  ContingencyTable table;
  ApproxReport report;
  Chi2Result chi2;
};

/// Result for one input row: either a record or a reject, never both.
struct RowOutcome {
  std::optional<BatchRecord> record;
  std::optional<Reject> reject;
};

/// Evaluates a single row. Validation failures become rejects.
RowOutcome evaluate_row(const InputRow& row, const LogFactorialTable& tbl, const BatchOptions& opts);

/// Serial reference path.
std::vector<RowOutcome> evaluate_rows_serial(const std::vector<InputRow>& rows, const BatchOptions& opts);

/// OpenMP path with opts.jobs threads; the output is in input order and
/// identical to evaluate_rows_serial.
std::vector<RowOutcome> evaluate_rows_parallel(const std::vector<InputRow>& rows, const BatchOptions& opts);

/// Dispatches on opts.jobs.
std::vector<RowOutcome> evaluate_rows(const std::vector<InputRow>& rows, const BatchOptions& opts);

/// Six significant digits, "inf" for infinities, empty for absent values.
std::string format_value(double v);

std::string format_output_row(const BatchRecord& r);
std::string format_log_keys_row(const BatchRecord& r);
std::string format_reject_row(const Reject& r);

struct BatchSummary {
  std::size_t records = 0;
  std::size_t rejects = 0;
};

/// Full batch: parse, evaluate, and write output/rejects/log-key streams.
/// Parse-time rejects and evaluation rejects are merged in line order.
BatchSummary run_batch(std::istream& in, std::ostream& out, std::ostream& rejects, std::ostream* log_keys,
                       const BatchOptions& opts);

}  // namespace fishub
