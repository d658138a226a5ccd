#include "fishub/batch.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "fishub/error.hpp"
#include "fishub/log_factorial.hpp"

namespace fishub {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_count(std::string_view field, Count& out) {
  field = trim(field);
  if (field.empty()) return false;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string quote_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string_view bool_field(bool b) { return b ? "1" : "0"; }

std::string format_log(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ParsedInput parse_input_csv(std::istream& in) {
  ParsedInput parsed;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("input is empty; expected header '" + std::string(kInputHeader) + "'");
  }
  std::string_view header = trim(line);
  if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
  if (header != kInputHeader) {
    throw std::runtime_error("unexpected header '" + std::string(header) + "'; expected '" +
                             std::string(kInputHeader) + "'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto fields = split_commas(text);
    InputRow row;
    row.line = line_no;
    row.id = std::string(trim(fields.front()));
    if (fields.size() != 5) {
      parsed.rejects.push_back({line_no, row.id, "MALFORMED",
                                "expected 5 fields, got " + std::to_string(fields.size())});
      continue;
    }
    if (!parse_count(fields[1], row.n) || !parse_count(fields[2], row.m_x) ||
        !parse_count(fields[3], row.m_a) || !parse_count(fields[4], row.m_xa)) {
      parsed.rejects.push_back({line_no, row.id, "MALFORMED", "non-integer count"});
      continue;
    }
    parsed.rows.push_back(std::move(row));
  }
  return parsed;
}

RowOutcome evaluate_row(const InputRow& row, const LogFactorialTable& tbl, const BatchOptions& opts) {
  RowOutcome outcome;
  try {
    ContingencyTable t = build_table(row.n, row.m_x, row.m_a, row.m_xa);
    if (opts.negate) t = negate_consequent(t);
    if (t.n() > tbl.max_n()) {
      throw Error(ErrorCode::CapacityExceeded, "n exceeds log-factorial capacity");
    }
    if (t.scaled_leverage() <= 0) {
      throw Error(ErrorCode::NegativeDependency,
                  opts.negate ? "negated rule has leverage <= 0" : "leverage <= 0; use --negate for X -> not A");
    }
    ApproxReport rep = report(t, tbl, opts.k, opts.include_exact);
    const Chi2Result chi = chi2_one_sided(t, rep.stats);
    outcome.record.emplace(BatchRecord{row.id, t, std::move(rep), chi});
  } catch (const Error& e) {
    outcome.reject = Reject{row.line, row.id, std::string(error_code_name(e.code())), e.what()};
  }
  return outcome;
}

namespace {

LogFactorialTable table_for(const std::vector<InputRow>& rows) {
  Count max_n = 0;
  for (const auto& r : rows) max_n = std::max(max_n, r.n);
  LogFactorialCache& cache = shared_log_factorials();
  return cache.snapshot(std::min(max_n, cache.budget()));
}

}  // namespace

std::vector<RowOutcome> evaluate_rows_serial(const std::vector<InputRow>& rows, const BatchOptions& opts) {
  const LogFactorialTable tbl = table_for(rows);
  std::vector<RowOutcome> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(evaluate_row(row, tbl, opts));
  return out;
}

std::vector<RowOutcome> evaluate_rows_parallel(const std::vector<InputRow>& rows, const BatchOptions& opts) {
  const LogFactorialTable tbl = table_for(rows);
  std::vector<RowOutcome> out(rows.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(1, opts.jobs))
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = evaluate_row(rows[static_cast<std::size_t>(i)], tbl, opts);
    } catch (...) {
#pragma omp critical(fishub_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<RowOutcome> evaluate_rows(const std::vector<InputRow>& rows, const BatchOptions& opts) {
  return opts.jobs > 1 ? evaluate_rows_parallel(rows, opts) : evaluate_rows_serial(rows, opts);
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_output_row(const BatchRecord& r) {
  const ApproxReport& rep = r.report;
  const ContingencyTable& t = r.table;
  std::string s;
  s.reserve(200);
  auto field = [&s](std::string_view v) {
    s += v;
    s += ',';
  };
  field(r.id);
  field(std::to_string(t.n()));
  field(std::to_string(t.m_x()));
  field(std::to_string(t.m_a()));
  field(std::to_string(t.m_xa()));
  field(std::to_string(t.j()));
  field(format_value(rep.stats.lift));
  field(format_value(rep.stats.leverage));
  field(format_value(rep.stats.odds_ratio));
  field(rep.exact ? format_value(rep.exact->linear_value) : "");
  field(format_value(rep.ub1.linear_value));
  field(format_value(rep.ub2.linear_value));
  field(format_value(rep.ubk.linear_value));
  field(std::to_string(rep.k));
  field(format_value(rep.error_bound));
  field(format_value(r.chi2.p_one_sided));
  field(format_value(r.chi2.min_expected));
  field(bool_field(rep.guarantee.ub1_within_p0));
  field(bool_field(rep.guarantee.ub2_within_p0));
  s += bool_field(rep.any_clamped());
  return s;
}

std::string format_log_keys_row(const BatchRecord& r) {
  const ApproxReport& rep = r.report;
  return r.id + ',' + (rep.exact ? format_log(rep.exact->raw_log_value) : "") + ',' +
         format_log(rep.ub1.raw_log_value) + ',' + format_log(rep.ub2.raw_log_value) + ',' +
         format_log(rep.ubk.raw_log_value);
}

std::string format_reject_row(const Reject& r) {
  return std::to_string(r.line) + ',' + quote_field(r.id) + ',' + r.reason + ',' + quote_field(r.detail);
}

BatchSummary run_batch(std::istream& in, std::ostream& out, std::ostream& rejects, std::ostream* log_keys,
                       const BatchOptions& opts) {
  ParsedInput parsed = parse_input_csv(in);
  const std::vector<RowOutcome> outcomes = evaluate_rows(parsed.rows, opts);

  BatchSummary summary;
  out << kOutputHeader << '\n';
  if (log_keys) *log_keys << kLogKeysHeader << '\n';
  std::vector<Reject> all_rejects = std::move(parsed.rejects);
  for (const auto& o : outcomes) {
    if (o.record) {
      out << format_output_row(*o.record) << '\n';
      if (log_keys) *log_keys << format_log_keys_row(*o.record) << '\n';
      ++summary.records;
    } else {
      all_rejects.push_back(*o.reject);
    }
  }
  std::stable_sort(all_rejects.begin(), all_rejects.end(),
                   [](const Reject& a, const Reject& b) { return a.line < b.line; });
  rejects << kRejectsHeader << '\n';
  for (const auto& r : all_rejects) rejects << format_reject_row(r) << '\n';
  summary.rejects = all_rejects.size();
  return summary;
}

}  // namespace fishub
