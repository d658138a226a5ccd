#include "fishub/error.hpp"

namespace fishub {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MarginViolation: return "MARGIN_VIOLATION";
    case ErrorCode::DegenerateMargin: return "DEGENERATE_MARGIN";
    case ErrorCode::CapacityExceeded: return "CAPACITY_EXCEEDED";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::NegativeDependency: return "NEGATIVE_DEPENDENCY";
    case ErrorCode::NotApplicable: return "NOT_APPLICABLE";
    case ErrorCode::InvalidK: return "INVALID_K";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace fishub
