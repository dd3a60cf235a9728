#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace lerwkit::cli {

inline constexpr int kStatusOk = 0;
inline constexpr int kStatusInternal = 1;
inline constexpr int kStatusConfig = 2;
inline constexpr int kStatusDomain = 3;
inline constexpr int kStatusSolver = 4;

/// Runs one command line (program name excluded). Artifacts go to the file
/// named by --out, or to `out` when no file is given; diagnostics go to
/// `err`. Returns the process exit status.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lerwkit::cli
