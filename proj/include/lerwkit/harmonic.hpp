#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lerwkit/five_point.hpp"
#include "lerwkit/lattice.hpp"
#include "lerwkit/paths.hpp"
#include "lerwkit/rng.hpp"

namespace lerwkit {

/// Real function on A (Support::Domain, indexed like A.points()) or on the
/// outer boundary (Support::Boundary, indexed like boundary().outer).
struct HarmonicField {
  enum class Support { Domain, Boundary };

  std::shared_ptr<const LatticeDomain> domain;
  Support support = Support::Domain;
  std::vector<double> values;

  bool has(LatticePoint p) const noexcept;
  /// Throws PointOutsideDomain when p is not in the support.
  double at(LatticePoint p) const;
};

/// k x k matrix of kernel values with row points x^1..x^k and column points
/// y^1..y^k.
struct HittingMatrix {
  std::vector<LatticePoint> rows;
  std::vector<LatticePoint> cols;
  std::vector<double> entries;  // row-major

  std::size_t k() const noexcept { return rows.size(); }
  double operator()(std::size_t j, std::size_t l) const { return entries[j * cols.size() + l]; }
  double determinant() const;
};

/// Exact random-walk potential theory on one domain. Holds the factorised
/// five-point operator, so build one per domain and reuse it.
class HarmonicSolver {
 public:
  explicit HarmonicSolver(LatticeDomain a, double residual_tolerance = FivePointSolver::kResidualTolerance);
  explicit HarmonicSolver(std::shared_ptr<const LatticeDomain> a,
                          double residual_tolerance = FivePointSolver::kResidualTolerance);

  const LatticeDomain& domain() const noexcept { return solver_.domain(); }
  const FivePointSolver& five_point() const noexcept { return solver_; }

  /// G_A(x, .) on A.
  HarmonicField green_row(LatticePoint x) const;
  double green(LatticePoint x, LatticePoint y) const;

  /// G_A(x, 0) computed as E^x[a(S_tau)] - a(x), a route independent of
  /// green_row. Requires the origin in A.
  double green_via_potential(LatticePoint x) const;

  /// h_A(x, .) on the outer boundary, by last-exit decomposition.
  HarmonicField poisson_kernel(LatticePoint x) const;

  /// h_dA(x, y) = (1/16) sum_{(z,y)} sum_{(w,x)} G_A(w, z).
  double excursion_kernel(LatticePoint x, LatticePoint y) const;
  /// h_dA(x, y) = (1/4) sum_{(z,x)} h_A(z, y), with h_A(., y) obtained from
  /// a separate Dirichlet solve.
  double excursion_kernel_first_step(LatticePoint x, LatticePoint y) const;

  /// One Green solve per distinct inner neighbour of the row points.
  HittingMatrix excursion_matrix(std::span<const LatticePoint> xs, std::span<const LatticePoint> ys) const;

 private:
  int require_inside(LatticePoint x) const;
  void require_boundary(LatticePoint x) const;
  FivePointSolver solver_;
};

/// (1/4) sum_e (F(x+e) - F(x)); every neighbour must be in the support.
double discrete_laplacian(const HarmonicField& f, LatticePoint x);

/// Simple random walk from x in A up to and including its first site outside A.
WalkPath sample_exit_walk(const LatticeDomain& a, LatticePoint x, Rng& rng);
WalkPath sample_exit_walk(const LatticeDomain& a, LatticePoint x, std::uint64_t seed);

}  // namespace lerwkit
