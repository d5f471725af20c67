#include "siegelkit/errors.hpp"

namespace siegelkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ImaginaryPartNotPositiveDefinite: return "ImaginaryPartNotPositiveDefinite";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RadiusCapExceeded: return "RadiusCapExceeded";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::GenusTooLargeForQuadrature: return "GenusTooLargeForQuadrature";
    case ErrorCode::NonHermitianCoefficients: return "NonHermitianCoefficients";
    case ErrorCode::InvalidPolarization: return "InvalidPolarization";
    case ErrorCode::LeftSiegelDomain: return "LeftSiegelDomain";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::UnknownIdentity: return "UnknownIdentity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace siegelkit
