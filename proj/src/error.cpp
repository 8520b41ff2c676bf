#include "qpd/error.hpp"

namespace qpd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonPositiveState: return "NonPositiveState";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::SingularB: return "SingularB";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoInteriorFixedPoint: return "NoInteriorFixedPoint";
    case ErrorCode::ResidualCheckFailed: return "ResidualCheckFailed";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GuardTermination: return "GuardTermination";
    case ErrorCode::NoDetection: return "NoDetection";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::BadInitialCondition: return "BadInitialCondition";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace qpd
