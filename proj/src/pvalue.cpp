#include "fishub/pvalue.hpp"

#include <cmath>

namespace fishub {

PValue PValue::from_log(double raw_log, Count terms) noexcept {
  PValue p;
  p.raw_log_value = raw_log;
  p.terms_evaluated = terms;
  if (raw_log > 0.0) {
    p.clamped = true;
    p.log_value = 0.0;
  } else {
    p.log_value = raw_log;
  }
  p.linear_value = std::exp(p.log_value);
  return p;
}

}  // namespace fishub
