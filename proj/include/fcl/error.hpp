#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fcl {

enum class ErrorCode {
  DivisionByZeroJet,
  NegativeSqrtJet,
  OrderExceeded,
  StepUnderflow,
  SyntaxError,
  DimensionMismatch,
  UnknownIdentifier,
  NotPositiveDefinite,
  DomainViolation,
  SingularMetric,
  DegenerateFlag,
  NotScalarFlag,
  RiemannianDegenerate,
  NotASurface,
  LeftDomain,
  FitFailed,
  EmptyDomain,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the engine carries a machine-readable code so the
// CLI can map it onto exit codes and structured report entries.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Parse failures carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  // The message without position or code.
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

}  // namespace fcl
