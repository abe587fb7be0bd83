#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divalg {

/// Failure categories raised by the library. The CLI maps a few of these to
/// dedicated exit codes (see docs/formats.md).
enum class ErrorCode {
  DivisionByZero,
  NegativeRadicand,
  NonPositiveRadicand,
  ZeroInverse,
  ZeroValuation,
  PrecisionExhausted,
  NotInvertible,
  NotDivision,
  WrongAlgebra,
  WrongModel,
  NotUnit,
  FrameMismatch,
  NotSpecialOrthogonal,
  LatitudeMismatch,
  PoleDegenerate,
  YInG,
  UnboundGenerator,
  GroupTooLarge,
  BadAction,
  NotPrime,
  NoIrreducible,
  ParseError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace divalg
