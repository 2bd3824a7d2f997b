#include "fcl/error.hpp"

namespace fcl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZeroJet: return "DivisionByZeroJet";
    case ErrorCode::NegativeSqrtJet: return "NegativeSqrtJet";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::DegenerateFlag: return "DegenerateFlag";
    case ErrorCode::NotScalarFlag: return "NotScalarFlag";
    case ErrorCode::RiemannianDegenerate: return "RiemannianDegenerate";
    case ErrorCode::NotASurface: return "NotASurface";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::FitFailed: return "FitFailed";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

ParseError::ParseError(ErrorCode code, int line, int column, const std::string& message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

}  // namespace fcl
