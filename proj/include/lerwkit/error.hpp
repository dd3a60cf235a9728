#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lerwkit {

enum class ErrorCode {
  // domain validation
  Empty,
  NotConnected,
  NotSimplyConnected,
  OriginMissing,
  PointOutsideDomain,
  NotBoundary,
  IsolatedBoundaryPoint,
  // solver
  SolveFailure,
  // argument / precondition errors
  ZeroPoint,
  SamePoint,
  DuplicatePoint,
  MissingNeighbor,
  CoincidentPoints,
  OutsideDisk,
  CoincidentAngles,
  NonPositiveLength,
  OutOfRange,
  BadOrdering,
  BadParameter,
  EmptyPath,
  ZeroDiagonal,
  AngularGapTooSmall,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain validation failures map to CLI status 3, solver failures to 4.
enum class ErrorCategory { Config, Domain, Solver };

ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lerwkit
