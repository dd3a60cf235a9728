#include "lerwkit/error.hpp"

namespace lerwkit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorCode::OriginMissing: return "OriginMissing";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::NotBoundary: return "NotBoundary";
    case ErrorCode::IsolatedBoundaryPoint: return "IsolatedBoundaryPoint";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::ZeroPoint: return "ZeroPoint";
    case ErrorCode::SamePoint: return "SamePoint";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::MissingNeighbor: return "MissingNeighbor";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::OutsideDisk: return "OutsideDisk";
    case ErrorCode::CoincidentAngles: return "CoincidentAngles";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadOrdering: return "BadOrdering";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::EmptyPath: return "EmptyPath";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::AngularGapTooSmall: return "AngularGapTooSmall";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Empty:
    case ErrorCode::NotConnected:
    case ErrorCode::NotSimplyConnected:
    case ErrorCode::OriginMissing:
    case ErrorCode::PointOutsideDomain:
    case ErrorCode::NotBoundary:
    case ErrorCode::IsolatedBoundaryPoint:
      return ErrorCategory::Domain;
    case ErrorCode::SolveFailure:
      return ErrorCategory::Solver;
    default:
      return ErrorCategory::Config;
  }
}

}  // namespace lerwkit
