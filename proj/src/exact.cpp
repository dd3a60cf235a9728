#include "lerwkit/exact.hpp"

#include "lerwkit/error.hpp"

namespace lerwkit::exact {

std::vector<std::vector<Rational>> green_matrix(const LatticeDomain& a) {
  const std::size_t n = a.size();
  if (n > kMaxPoints) throw Error(ErrorCode::BadParameter, "exact mode is limited to 30 points");
  const auto& pts = a.points();

  // [M | 4I] -> [I | G]
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 4;
    m[i][n + i] = 4;
    for (auto s : kSteps)
      if (int j = a.index_of(pts[i] + s); j >= 0) m[i][std::size_t(j)] = -1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0) ++piv;  // M is nonsingular
    std::swap(m[piv], m[c]);
    const Rational inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<std::vector<Rational>> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i].assign(m[i].begin() + std::ptrdiff_t(n), m[i].end());
  return g;
}

std::vector<Rational> green_row(const LatticeDomain& a, LatticePoint x) {
  const int i = a.index_of(x);
  if (i < 0) throw Error(ErrorCode::PointOutsideDomain, "point is not in the domain");
  return green_matrix(a)[std::size_t(i)];
}

std::vector<Rational> poisson_kernel(const LatticeDomain& a, LatticePoint x) {
  const auto g = green_row(a, x);
  std::vector<Rational> h(a.boundary().outer.size());
  for (const auto& e : a.boundary().edges)
    h[std::size_t(a.outer_index(e.outside))] += g[std::size_t(a.index_of(e.inside))] / 4;
  return h;
}

Rational excursion_kernel(const LatticeDomain& a, LatticePoint x, LatticePoint y) {
  if (!a.on_boundary(x) || !a.on_boundary(y)) throw Error(ErrorCode::NotBoundary, "points must be on the boundary");
  if (x == y) throw Error(ErrorCode::SamePoint, "excursion kernel needs distinct points");
  const auto g = green_matrix(a);
  Rational total = 0;
  for (auto s : kSteps) {
    const int w = a.index_of(x + s);
    if (w < 0) continue;
    for (auto t : kSteps)
      if (int z = a.index_of(y + t); z >= 0) total += g[std::size_t(w)][std::size_t(z)];
  }
  return total / 16;
}

}  // namespace lerwkit::exact
