#include "webs/types.hpp"

namespace webs {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateDomain: return "DegenerateDomain";
    case ErrorKind::NoInnerArray: return "NoInnerArray";
    case ErrorKind::UnsupportedBoundary: return "UnsupportedBoundary";
    case ErrorKind::UnparameterizedBoundary: return "UnparameterizedBoundary";
    case ErrorKind::EmptyBasis: return "EmptyBasis";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ProjectionSingular: return "ProjectionSingular";
    case ErrorKind::SecondDerivativeUnavailable: return "SecondDerivativeUnavailable";
    case ErrorKind::NonEllipticDiffusion: return "NonEllipticDiffusion";
    case ErrorKind::UnknownKind: return "UnknownKind";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace webs
