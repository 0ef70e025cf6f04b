#include "subgauss/error.hpp"

namespace subgauss {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveZero: return "NonPositiveZero";
    case ErrorCode::NegativeGamma: return "NegativeGamma";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::GridMomentDiverged: return "GridMomentDiverged";
    case ErrorCode::NotACharacteristicFunction: return "NotACharacteristicFunction";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ZeroOnImaginaryAxis: return "ZeroOnImaginaryAxis";
    case ErrorCode::QuadrantViolation: return "QuadrantViolation";
    case ErrorCode::AngleViolation: return "AngleViolation";
    case ErrorCode::LambdaTooSmall: return "LambdaTooSmall";
    case ErrorCode::EmptyZeroSet: return "EmptyZeroSet";
    case ErrorCode::AllZeroCoefficients: return "AllZeroCoefficients";
    case ErrorCode::CTooLarge: return "CTooLarge";
    case ErrorCode::MomentConstraintViolated: return "MomentConstraintViolated";
    case ErrorCode::SigmaOutOfRange: return "SigmaOutOfRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TransformDiverged: return "TransformDiverged";
    case ErrorCode::RatioDiverged: return "RatioDiverged";
    case ErrorCode::NotStandardized: return "NotStandardized";
    case ErrorCode::AliasingDetected: return "AliasingDetected";
    case ErrorCode::NormalizationDrift: return "NormalizationDrift";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

bool Error::is_validation() const noexcept {
  switch (code_) {
    case ErrorCode::OverflowGuard:
    case ErrorCode::GridMomentDiverged:
    case ErrorCode::TransformDiverged:
    case ErrorCode::RatioDiverged:
    case ErrorCode::AliasingDetected:
    case ErrorCode::NormalizationDrift:
    case ErrorCode::NumericFailure:
      return false;
    default:
      return true;
  }
}

}  // namespace subgauss
