#include "nlspinor/error.hpp"

namespace nlspinor {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kNonIntegerPowerOfNegative: return "NonIntegerPowerOfNegative";
    case ErrorCode::kSingularPoint: return "SingularPoint";
    case ErrorCode::kNegativeLogArgument: return "NegativeLogArgument";
    case ErrorCode::kNegativeRadicand: return "NegativeRadicand";
    case ErrorCode::kDivisionByZeroDerivative: return "DivisionByZeroDerivative";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kDivergentIntegral: return "DivergentIntegral";
    case ErrorCode::kModeParameterMismatch: return "ModeParameterMismatch";
    case ErrorCode::kGaugeNotFixed: return "GaugeNotFixed";
    case ErrorCode::kStencilOutOfDomain: return "StencilOutOfDomain";
  }
  return "Error";
}

}  // namespace nlspinor
