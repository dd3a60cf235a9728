#include "lerwkit/five_point.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>

#include "lerwkit/error.hpp"

namespace lerwkit {

struct FivePointSolver::Impl {
  // Neighbour indices per point, -1 where the neighbour is outside.
  std::vector<std::array<int, 4>> nbr;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
};

FivePointSolver::FivePointSolver(std::shared_ptr<const LatticeDomain> domain, double residual_tolerance)
    : domain_(std::move(domain)), tolerance_(residual_tolerance), impl_(std::make_unique<Impl>()) {
  if (!(residual_tolerance > 0)) throw Error(ErrorCode::BadParameter, "residual tolerance must be positive");
  const auto& pts = domain_->points();
  const int n = int(pts.size());
  impl_->nbr.resize(pts.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(pts.size() * 3);
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, 4.0);
    for (int k = 0; k < 4; ++k) {
      const int j = domain_->index_of(pts[std::size_t(i)] + kSteps[std::size_t(k)]);
      impl_->nbr[std::size_t(i)][std::size_t(k)] = j;
      if (j >= 0 && j < i) trip.emplace_back(i, j, -1.0);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  impl_->ldlt.compute(m);
  if (impl_->ldlt.info() != Eigen::Success)
    throw Error(ErrorCode::SolveFailure, "factorisation of the five-point operator failed");
}

FivePointSolver::~FivePointSolver() = default;
FivePointSolver::FivePointSolver(FivePointSolver&&) noexcept = default;
FivePointSolver& FivePointSolver::operator=(FivePointSolver&&) noexcept = default;

void FivePointSolver::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = impl_->nbr.size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 4 * x[i];
    for (int j : impl_->nbr[i])
      if (j >= 0) s -= x[std::size_t(j)];
    y[i] = s;
  }
}

std::vector<double> FivePointSolver::solve(std::span<const double> rhs) const {
  const Eigen::Index n = Eigen::Index(impl_->nbr.size());
  if (Eigen::Index(rhs.size()) != n) throw Error(ErrorCode::BadParameter, "right-hand side has wrong length");
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  Eigen::VectorXd u = impl_->ldlt.solve(b);
  const double bnorm = b.norm();
  Eigen::VectorXd r(n);
  auto residual = [&] {
    apply({u.data(), std::size_t(n)}, {r.data(), std::size_t(n)});
    r = b - r;
    return bnorm > 0 ? r.norm() / bnorm : r.norm();
  };
  double rel = residual();
  if (!(rel <= tolerance_)) {
    u += impl_->ldlt.solve(r);
    rel = residual();
  }
  if (impl_->ldlt.info() != Eigen::Success || !(rel <= tolerance_))
    throw Error(ErrorCode::SolveFailure, "relative residual " + std::to_string(rel) + " above tolerance");
  return {u.data(), u.data() + n};
}

std::vector<double> FivePointSolver::green_column(int source) const {
  if (source < 0 || std::size_t(source) >= impl_->nbr.size())
    throw Error(ErrorCode::PointOutsideDomain, "Green source is not in the domain");
  std::vector<double> rhs(impl_->nbr.size(), 0.0);
  rhs[std::size_t(source)] = 4.0;
  return solve(rhs);
}

std::vector<std::vector<double>> FivePointSolver::green_columns(std::span<const int> sources) const {
  std::vector<std::vector<double>> out(sources.size());
  const std::ptrdiff_t n = std::ptrdiff_t(sources.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[std::size_t(i)] = green_column(sources[std::size_t(i)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::vector<double>> FivePointSolver::green_columns_serial(std::span<const int> sources) const {
  std::vector<std::vector<double>> out;
  out.reserve(sources.size());
  for (int s : sources) out.push_back(green_column(s));
  return out;
}

std::vector<double> FivePointSolver::dirichlet(const std::function<double(LatticePoint)>& data) const {
  const auto& pts = domain_->points();
  std::vector<double> rhs(pts.size(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int k = 0; k < 4; ++k)
      if (impl_->nbr[i][std::size_t(k)] < 0) rhs[i] += data(pts[i] + kSteps[std::size_t(k)]);
  return solve(rhs);
}

}  // namespace lerwkit
