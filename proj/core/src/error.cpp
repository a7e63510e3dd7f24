#include "simplexgeo/error.hpp"

namespace simplexgeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveCoordinate: return "NonPositiveCoordinate";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::NoTailModel: return "NoTailModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::ExponentNotTwo: return "ExponentNotTwo";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateEndpoints: return "DegenerateEndpoints";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::CurveDomain: return "CurveDomain";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::PositivityLost: return "PositivityLost";
    case ErrorCode::ComplexResidue: return "ComplexResidue";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
  }
  return "Unknown";
}

namespace {
std::string compose(ErrorCode code, const std::string& where, const std::string& detail) {
  std::string msg(to_string(code));
  msg += " in ";
  msg += where;
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}
}  // namespace

Error::Error(ErrorCode code, std::string where, const std::string& detail)
    : std::runtime_error(compose(code, where, detail)), code_(code), where_(std::move(where)) {}

void raise(ErrorCode code, std::string where, const std::string& detail) {
  throw Error(code, std::move(where), detail);
}

}  // namespace simplexgeo
