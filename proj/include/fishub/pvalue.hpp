#pragma once

#include "fishub/contingency.hpp"

namespace fishub {

/// A probability held in natural-log space.
///
/// `log_value` is the authoritative value; `linear_value` is exp(log_value)
/// and reads 0.0 once that underflows. Bounds that exceed 1 are clamped to
/// log_value = 0 with `clamped` set, while `raw_log_value` keeps the
/// unclamped number so rankings stay total.
struct PValue {
  double log_value = 0.0;
  double linear_value = 1.0;
  bool clamped = false;
  Count terms_evaluated = 0;
  double raw_log_value = 0.0;

  static PValue from_log(double raw_log, Count terms) noexcept;
};

}  // namespace fishub
