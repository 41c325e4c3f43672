#include "berglab/error.hpp"

namespace berglab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOutOfSupport: return "OutOfSupport";
    case ErrorCode::kUnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNoDecay: return "NoDecay";
    case ErrorCode::kPoleInC: return "PoleInC";
    case ErrorCode::kUnsupportedSelector: return "UnsupportedSelector";
    case ErrorCode::kDerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorCode::kNonpositiveSlope: return "NonpositiveSlope";
    case ErrorCode::kHigherVanishing: return "HigherVanishing";
    case ErrorCode::kHypothesisViolation: return "HypothesisViolation";
    case ErrorCode::kDegenerateGrid: return "DegenerateGrid";
    case ErrorCode::kInnerTransformFailure: return "InnerTransformFailure";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

bool is_numerical_failure(ErrorCode code) noexcept {
  return code == ErrorCode::kNoConvergence || code == ErrorCode::kNoDecay ||
         code == ErrorCode::kInnerTransformFailure;
}

}  // namespace berglab
