#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpd {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  NonPositiveState,
  Overflow,
  SingularB,
  SingularMatrix,
  SingularSystem,
  NoInteriorFixedPoint,
  ResidualCheckFailed,
  WrongDimension,
  InvalidArgument,
  GuardTermination,
  NoDetection,
  ParseError,
  SchemaError,
  BadInitialCondition,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Structured failure raised by every library operation. The code is the
/// machine-readable part; what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qpd
