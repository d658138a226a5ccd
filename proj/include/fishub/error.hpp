#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fishub {

enum class ErrorCode {
  MarginViolation,
  DegenerateMargin,
  CapacityExceeded,
  OutOfRange,
  NegativeDependency,
  NotApplicable,
  InvalidK,
  Internal,
};

/// Stable upper-case token used in reject files and diagnostics.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fishub
