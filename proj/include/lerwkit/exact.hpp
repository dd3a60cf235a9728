#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "lerwkit/lattice.hpp"

namespace lerwkit::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Rational arithmetic is only offered for small domains.
inline constexpr std::size_t kMaxPoints = 30;

/// Full Green matrix G_A, indexed like A.points(), by Gauss-Jordan
/// elimination over the rationals.
std::vector<std::vector<Rational>> green_matrix(const LatticeDomain& a);

std::vector<Rational> green_row(const LatticeDomain& a, LatticePoint x);
/// h_A(x, .) indexed like boundary().outer.
std::vector<Rational> poisson_kernel(const LatticeDomain& a, LatticePoint x);
Rational excursion_kernel(const LatticeDomain& a, LatticePoint x, LatticePoint y);

}  // namespace lerwkit::exact
