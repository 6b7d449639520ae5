#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ratlin {

enum class ErrorCode {
  ZeroDenominator,
  NotDefinedAt,
  AllZeroMatrix,
  DimensionMismatch,
  SingularStateMatrix,
  StateNotRegular,
  PreconditionNotMinimal,
  DualBasisNotFullRankInRegion,
  NonUniformRowDegrees,
  ReversedBasisRankDeficient,
  NotSharpDegree,
  RealizationNotMinimal,
  UnimodularCompletionFailed,
  ToleranceNotReached,
  DegenerateSamples,
  NotRationalizable,
  SingularTermPencil,
  NonSquare,
  FunctionNotEvaluable,
  InvalidArgument,
  ConfigError,
  ProblemParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI and the Python layer can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Error(ErrorCode code, const std::string& what, std::string witness)
      : std::runtime_error(std::string(to_string(code)) + ": " + what + " (witness: " + witness + ")"),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  /// Offending point or object, when the failure has one.
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::string witness_;
};

}  // namespace ratlin
