#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simplexgeo {

enum class ErrorCode {
  NonPositiveCoordinate,
  DimensionTooSmall,
  NotNormalizable,
  LengthMismatch,
  InvalidExponent,
  NoTailModel,
  InvalidArgument,
  NotPositive,
  BaseMismatch,
  ExponentNotTwo,
  DimensionMismatch,
  DegenerateEndpoints,
  StepUnderflow,
  CurveDomain,
  NonFiniteInput,
  PositivityLost,
  ComplexResidue,
  NotOnSphere,
  ParseError,
  RatioOutOfRange,
};

std::string_view to_string(ErrorCode code);

// Every library failure carries a code plus the "module::operation" that
// raised it, so the CLI can report where things went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string where, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

[[noreturn]] void raise(ErrorCode code, std::string where, const std::string& detail);

}  // namespace simplexgeo
