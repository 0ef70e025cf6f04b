#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subgauss {

enum class ErrorCode {
  EmptyGrid,
  InvalidInterval,
  InvalidArgument,
  NonPositiveZero,
  NegativeGamma,
  OverflowGuard,
  GridMomentDiverged,
  NotACharacteristicFunction,
  OutOfDomain,
  ZeroOnImaginaryAxis,
  QuadrantViolation,
  AngleViolation,
  LambdaTooSmall,
  EmptyZeroSet,
  AllZeroCoefficients,
  CTooLarge,
  MomentConstraintViolated,
  SigmaOutOfRange,
  OutOfRange,
  TransformDiverged,
  RatioDiverged,
  NotStandardized,
  AliasingDetected,
  NormalizationDrift,
  ParseError,
  ConfigInvalid,
  NumericFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Validation failures (bad input) vs numeric failures (the computation itself
  // could not be carried out reliably).
  bool is_validation() const noexcept;

 private:
  ErrorCode code_;
};

}  // namespace subgauss
