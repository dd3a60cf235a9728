#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "lerwkit/lattice.hpp"

namespace lerwkit {

/// Factorisation of the absorbed five-point operator M = 4I - Adj on a
/// lattice domain. M G = 4I, so column x of 4 M^{-1} is G_A(x, .).
///
/// The factorisation is a sparse LDL^T with AMD ordering; it is
/// deterministic and every solve is checked against a relative residual
/// bound, with one step of iterative refinement before giving up.
class FivePointSolver {
 public:
  static constexpr std::string_view kMethod = "sparse-ldlt-amd";
  static constexpr double kResidualTolerance = 1e-12;

  /// Solves are accepted when ||M u - b|| <= residual_tolerance ||b||.
  explicit FivePointSolver(std::shared_ptr<const LatticeDomain> domain,
                           double residual_tolerance = kResidualTolerance);
  ~FivePointSolver();
  FivePointSolver(FivePointSolver&&) noexcept;
  FivePointSolver& operator=(FivePointSolver&&) noexcept;

  const LatticeDomain& domain() const noexcept { return *domain_; }
  double residual_tolerance() const noexcept { return tolerance_; }
  const std::shared_ptr<const LatticeDomain>& domain_ptr() const noexcept { return domain_; }

  /// Solves M u = rhs. Vectors are indexed like domain().points().
  std::vector<double> solve(std::span<const double> rhs) const;

  /// G_A(source, y) for every y in the domain.
  std::vector<double> green_column(int source) const;

  /// Several Green columns, computed concurrently with OpenMP.
  std::vector<std::vector<double>> green_columns(std::span<const int> sources) const;
  /// Serial reference for green_columns; results are bitwise identical.
  std::vector<std::vector<double>> green_columns_serial(std::span<const int> sources) const;

  /// Discrete harmonic extension of `data` given on the outer boundary.
  std::vector<double> dirichlet(const std::function<double(LatticePoint)>& data) const;

  /// y = M x.
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  struct Impl;
  std::shared_ptr<const LatticeDomain> domain_;
  double tolerance_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lerwkit
