#pragma once

#include <cmath>

namespace fishub::detail {

// Neumaier variant of Kahan summation.
class CompensatedSum {
 public:
  explicit CompensatedSum(double init = 0.0) noexcept : sum_(init) {}

  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_;
  double comp_ = 0.0;
};

}  // namespace fishub::detail
