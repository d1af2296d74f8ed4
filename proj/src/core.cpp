#include "antilinear/core.hpp"

namespace antilinear {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ThreeOnCircle: return "ThreeOnCircle";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::MassNotNormalizable: return "MassNotNormalizable";
    case ErrorKind::InvalidAngle: return "InvalidAngle";
    case ErrorKind::InvalidJacobi: return "InvalidJacobi";
    case ErrorKind::InsufficientMoments: return "InsufficientMoments";
    case ErrorKind::IndefiniteMoments: return "IndefiniteMoments";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::ZeroStart: return "ZeroStart";
    case ErrorKind::ZeroRhs: return "ZeroRhs";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Breakdown: return "Breakdown";
    case ErrorKind::ZeroFirstEntry: return "ZeroFirstEntry";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind) {}

}  // namespace antilinear
