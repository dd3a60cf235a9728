#pragma once

#include "lerwkit/lattice.hpp"

namespace lerwkit {

struct PotentialConstants {
  double euler_gamma;
  double k0;               // (2 gamma + 3 ln 2) / pi
  int asymptotic_cutoff;   // max(|x|,|y|) beyond which the log expansion is used
};

const PotentialConstants& potential_constants() noexcept;

/// Potential kernel of two-dimensional simple random walk, normalised so
/// that a(0) = 0 and a is harmonic off the origin with La(0) = 1.
///
/// Inside the cutoff the value comes from an octant table built once by the
/// axis/diagonal recursion in 100-digit arithmetic (the recursion amplifies
/// rounding geometrically, so double precision is not enough). Outside it
/// the expansion (2/pi) ln|x| + k0 is returned; its remainder there is
/// about cos(4 arg x) / (6 pi |x|^2).
double potential_a(LatticePoint x);

/// True when potential_a(x) is served from the exact table.
bool potential_is_exact(LatticePoint x) noexcept;

/// k_x = k0 + (2/pi) ln|x| - a(x). Throws ZeroPoint at the origin.
double k_x(LatticePoint x);

}  // namespace lerwkit
