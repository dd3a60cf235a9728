#include "lerwkit/fomin.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "lerwkit/error.hpp"

namespace lerwkit {

HittingMatrix crossing_matrix(const HarmonicSolver& solver, const CrossingConfig& cfg) {
  if (&solver.domain() != cfg.domain.get() && solver.domain().points() != cfg.domain->points())
    throw Error(ErrorCode::BadParameter, "solver and crossing config use different domains");
  return solver.excursion_matrix(cfg.xs, cfg.ys);
}

double fomin_det(const HarmonicSolver& solver, const CrossingConfig& cfg) {
  return crossing_matrix(solver, cfg).determinant();
}

double fomin_det(const CrossingConfig& cfg) { return fomin_det(HarmonicSolver(cfg.domain), cfg); }

double conditional_det(const HittingMatrix& m) {
  const auto k = Eigen::Index(m.k());
  Eigen::MatrixXd r(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double d = m(std::size_t(j), std::size_t(j));
    if (!(d > 0)) throw Error(ErrorCode::ZeroDiagonal, "diagonal kernel value is not positive");
    for (Eigen::Index l = 0; l < k; ++l) r(j, l) = m(std::size_t(j), std::size_t(l)) / d;
  }
  return k == 0 ? 1.0 : r.determinant();
}

double conditional_det(const HarmonicSolver& solver, const CrossingConfig& cfg) {
  return conditional_det(crossing_matrix(solver, cfg));
}

double conditional_det(const CrossingConfig& cfg) { return conditional_det(HarmonicSolver(cfg.domain), cfg); }

double det_perturbation_bound(int k, double eps, double sup_b) {
  if (k < 1 || !(eps >= 0) || !(sup_b >= 0)) throw Error(ErrorCode::BadParameter, "need k >= 1, eps >= 0, sup_b >= 0");
  return (std::pow(1 + eps, k) - 1) * std::pow(double(k), k / 2.0) * std::pow(sup_b, k);
}

}  // namespace lerwkit
