#pragma once

#include <stdexcept>
#include <string>

namespace siegelkit {

enum class ErrorCode {
  NotSymmetric,
  ImaginaryPartNotPositiveDefinite,
  NotSymplectic,
  SingularDenominator,
  DimensionMismatch,
  RadiusCapExceeded,
  InvalidPolicy,
  IndexOutOfRange,
  WeightMismatch,
  GenusTooLargeForQuadrature,
  NonHermitianCoefficients,
  InvalidPolarization,
  LeftSiegelDomain,
  ConfigParseError,
  UnknownIdentity,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this exception; code() is stable
// and is what callers and tests should branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace siegelkit
