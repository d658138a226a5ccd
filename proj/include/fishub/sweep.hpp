#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fishub/batch.hpp"

namespace fishub {

/// Fixed margins and an inclusive m(XA) range; each point is evaluated for
/// ub1, ub2, ub3 and any extra exact-term counts in `ks`.
struct SweepSpec {
  Count n = 0;
  Count m_x = 0;
  Count m_a = 0;
  Count from = 0;
  Count to = 0;
  std::vector<Count> ks;
  bool include_exact = true;
};

struct SweepPoint {
  BatchRecord record;
  /// ub_k for each entry of extra_ks(), in order.
  std::vector<PValue> extra;
};

/// Entries of spec.ks other than 3, de-duplicated in first-seen order.
std::vector<Count> extra_ks(const SweepSpec& spec);

/// Throws Error{MarginViolation}/Error{DegenerateMargin} when an endpoint
/// breaks cell bounds, Error{OutOfRange} for from > to, and
/// Error{NegativeDependency} if any point has leverage <= 0.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

std::string sweep_header(const SweepSpec& spec);
std::string format_sweep_row(const SweepPoint& p);

void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepPoint>& points, std::ostream& out);

}  // namespace fishub
