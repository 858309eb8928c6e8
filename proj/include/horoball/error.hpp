#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace horoball {

enum class ErrorCode {
  InvalidPoint,
  SpaceMismatch,
  InvalidLambda,
  ZeroDirection,
  NotOnComplex,
  EmptySet,
  NegativeRadius,
  DegenerateCenter,
  InfeasibleStart,
  InvalidConfig,
  TooFewIterations,
  MultiplePointsPerLeg,
  EmptyGrid,
  ParseError,
  InvariantViolated,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::NotOnComplex: return "NotOnComplex";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NegativeRadius: return "NegativeRadius";
    case ErrorCode::DegenerateCenter: return "DegenerateCenter";
    case ErrorCode::InfeasibleStart: return "InfeasibleStart";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::TooFewIterations: return "TooFewIterations";
    case ErrorCode::MultiplePointsPerLeg: return "MultiplePointsPerLeg";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace horoball
