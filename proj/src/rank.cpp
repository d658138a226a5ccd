#include "fishub/rank.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fishub {

std::string_view measure_name(Measure m) noexcept {
  switch (m) {
    case Measure::Exact: return "p_fisher";
    case Measure::Ub1: return "ub1";
    case Measure::Ub2: return "ub2";
    case Measure::UbK: return "ubk";
    case Measure::Chi2: return "chi2_p";
  }
  return "?";
}

double rank_key(const BatchRecord& r, Measure m) {
  switch (m) {
    case Measure::Exact: return r.report.exact->raw_log_value;
    case Measure::Ub1: return r.report.ub1.raw_log_value;
    case Measure::Ub2: return r.report.ub2.raw_log_value;
    case Measure::UbK: return r.report.ubk.raw_log_value;
    case Measure::Chi2: return -r.chi2.z;
  }
  return 0.0;
}

std::vector<std::size_t> ordering(std::span<const BatchRecord> records, Measure m) {
  std::vector<double> keys(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) keys[i] = rank_key(records[i], m);
  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    if (records[a].id != records[b].id) return records[a].id < records[b].id;
    return a < b;
  });
  return idx;
}

RankAgreement rank_agreement(std::span<const BatchRecord> records, std::size_t top_k) {
  for (const auto& r : records) {
    if (!r.report.exact) throw std::invalid_argument("rank agreement needs exact p-values on every row");
  }
  RankAgreement out;
  out.rows = records.size();
  out.top_k = std::min(top_k, records.size());

  std::array<std::vector<std::size_t>, 5> orders;
  std::array<std::vector<std::size_t>, 5> ranks;
  for (std::size_t m = 0; m < kMeasures.size(); ++m) {
    orders[m] = ordering(records, kMeasures[m]);
    ranks[m].resize(records.size());
    for (std::size_t pos = 0; pos < orders[m].size(); ++pos) ranks[m][orders[m][pos]] = pos;
  }

  std::vector<char> in_exact_top(records.size(), 0);
  for (std::size_t pos = 0; pos < out.top_k; ++pos) in_exact_top[orders[0][pos]] = 1;
  for (std::size_t m = 0; m < kMeasures.size(); ++m) {
    if (out.top_k == 0) {
      out.top_overlap[m] = 1.0;
      continue;
    }
    std::size_t common = 0;
    for (std::size_t pos = 0; pos < out.top_k; ++pos) common += in_exact_top[orders[m][pos]];
    out.top_overlap[m] = static_cast<double>(common) / static_cast<double>(out.top_k);
  }

  const double n = static_cast<double>(records.size());
  for (std::size_t a = 0; a < kMeasures.size(); ++a) {
    for (std::size_t b = 0; b < kMeasures.size(); ++b) {
      if (records.size() < 2) {
        out.spearman[a][b] = 1.0;
        continue;
      }
      double d2 = 0.0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        const double d = static_cast<double>(ranks[a][i]) - static_cast<double>(ranks[b][i]);
        d2 += d * d;
      }
      out.spearman[a][b] = 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
    }
  }
  return out;
}

void write_rank_agreement(const RankAgreement& r, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "rows %zu, top-k %zu\n", r.rows, r.top_k);
  out << buf << "top-k overlap with p_fisher\n";
  for (std::size_t m = 0; m < kMeasures.size(); ++m) {
    std::snprintf(buf, sizeof buf, "  %-8s %.4f\n", measure_name(kMeasures[m]).data(), r.top_overlap[m]);
    out << buf;
  }
  out << "spearman rank correlation\n          ";
  for (Measure m : kMeasures) {
    std::snprintf(buf, sizeof buf, " %8s", measure_name(m).data());
    out << buf;
  }
  out << '\n';
  for (std::size_t a = 0; a < kMeasures.size(); ++a) {
    std::snprintf(buf, sizeof buf, "  %-8s", measure_name(kMeasures[a]).data());
    out << buf;
    for (std::size_t b = 0; b < kMeasures.size(); ++b) {
      std::snprintf(buf, sizeof buf, " %8.5f", r.spearman[a][b]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace fishub
