#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlspinor {

enum class ErrorCode {
  kValidation,
  kNonIntegerPowerOfNegative,
  kSingularPoint,
  kNegativeLogArgument,
  kNegativeRadicand,
  kDivisionByZeroDerivative,
  kDomain,
  kQuadratureFailure,
  kDivergentIntegral,
  kModeParameterMismatch,
  kGaugeNotFixed,
  kStencilOutOfDomain,
};

std::string_view to_string(ErrorCode code);

// Every library failure carries a code and, where meaningful, the offending
// value (a xi coordinate, a radicand, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double value = 0.0)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace nlspinor
