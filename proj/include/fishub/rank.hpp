#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "fishub/batch.hpp"

namespace fishub {

enum class Measure { Exact, Ub1, Ub2, UbK, Chi2 };
inline constexpr std::array<Measure, 5> kMeasures{Measure::Exact, Measure::Ub1, Measure::Ub2, Measure::UbK,
                                                 Measure::Chi2};

std::string_view measure_name(Measure m) noexcept;

/// Ranking key, smaller is more significant. Bounds and the exact value use
/// unclamped log p; chi2 uses -z, which orders identically to its p-value
/// without underflowing.
double rank_key(const BatchRecord& r, Measure m);

/// Row indices ordered by key, ties broken by id.
std::vector<std::size_t> ordering(std::span<const BatchRecord> records, Measure m);

struct RankAgreement {
  std::size_t rows = 0;
  std::size_t top_k = 0;  // effective: min(requested, rows)
  /// |top-k(m) ∩ top-k(exact)| / top_k for each measure.
  std::array<double, 5> top_overlap{};
  /// Spearman correlation between the orderings of each pair of measures.
  std::array<std::array<double, 5>, 5> spearman{};
};

/// Requires the exact p-value on every record (throws std::invalid_argument).
RankAgreement rank_agreement(std::span<const BatchRecord> records, std::size_t top_k);

void write_rank_agreement(const RankAgreement& r, std::ostream& out);

}  // namespace fishub
