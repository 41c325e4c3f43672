#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berglab {

enum class ErrorCode {
  kOutOfSupport,
  kUnsupportedOrder,
  kNoConvergence,
  kNoDecay,
  kPoleInC,
  kUnsupportedSelector,
  kDerivativeUnavailable,
  kNonpositiveSlope,
  kHigherVanishing,
  kHypothesisViolation,
  kDegenerateGrid,
  kInnerTransformFailure,
  kParseError,
  kValidationError,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// True for failures that mean "the numerics did not certify a result"
/// as opposed to bad input.
bool is_numerical_failure(ErrorCode code) noexcept;

}  // namespace berglab
