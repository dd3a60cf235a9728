#include "lerwkit/harmonic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <unordered_set>

#include "lerwkit/error.hpp"
#include "lerwkit/potential.hpp"

namespace lerwkit {

bool is_nearest_neighbour(const std::vector<LatticePoint>& sites) noexcept {
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (!adjacent(sites[i - 1], sites[i])) return false;
  return true;
}

bool is_self_avoiding(const std::vector<LatticePoint>& sites) {
  std::unordered_set<LatticePoint, LatticePointHash> seen;
  for (auto p : sites)
    if (!seen.insert(p).second) return false;
  return true;
}

bool HarmonicField::has(LatticePoint p) const noexcept {
  return support == Support::Domain ? domain->contains(p) : domain->on_boundary(p);
}

double HarmonicField::at(LatticePoint p) const {
  const int i = support == Support::Domain ? domain->index_of(p) : domain->outer_index(p);
  if (i < 0) throw Error(ErrorCode::PointOutsideDomain, "point is outside the field's support");
  return values[std::size_t(i)];
}

double HittingMatrix::determinant() const {
  const auto n = Eigen::Index(k());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) m(j, l) = (*this)(std::size_t(j), std::size_t(l));
  return n == 0 ? 1.0 : m.determinant();
}

HarmonicSolver::HarmonicSolver(LatticeDomain a, double residual_tolerance)
    : HarmonicSolver(std::make_shared<const LatticeDomain>(std::move(a)), residual_tolerance) {}

HarmonicSolver::HarmonicSolver(std::shared_ptr<const LatticeDomain> a, double residual_tolerance)
    : solver_(std::move(a), residual_tolerance) {}

int HarmonicSolver::require_inside(LatticePoint x) const {
  const int i = domain().index_of(x);
  if (i < 0) throw Error(ErrorCode::PointOutsideDomain, "point is not in the domain");
  return i;
}

void HarmonicSolver::require_boundary(LatticePoint x) const {
  if (!domain().on_boundary(x)) throw Error(ErrorCode::NotBoundary, "point is not on the outer boundary");
}

HarmonicField HarmonicSolver::green_row(LatticePoint x) const {
  return {solver_.domain_ptr(), HarmonicField::Support::Domain, solver_.green_column(require_inside(x))};
}

double HarmonicSolver::green(LatticePoint x, LatticePoint y) const {
  const int j = require_inside(y);
  return solver_.green_column(require_inside(x))[std::size_t(j)];
}

double HarmonicSolver::green_via_potential(LatticePoint x) const {
  if (!domain().origin_included()) throw Error(ErrorCode::OriginMissing, "domain must contain the origin");
  const int i = require_inside(x);
  const auto u = solver_.dirichlet([](LatticePoint y) { return potential_a(y); });
  return u[std::size_t(i)] - potential_a(x);
}

HarmonicField HarmonicSolver::poisson_kernel(LatticePoint x) const {
  const auto g = solver_.green_column(require_inside(x));
  const auto& b = domain().boundary();
  std::vector<double> h(b.outer.size(), 0.0);
  // Sum in ccw edge order so the result does not depend on hashing.
  for (const auto& e : b.edges)
    h[std::size_t(domain().outer_index(e.outside))] += 0.25 * g[std::size_t(domain().index_of(e.inside))];
  return {solver_.domain_ptr(), HarmonicField::Support::Boundary, std::move(h)};
}

namespace {

std::vector<LatticePoint> inner_neighbours(const LatticeDomain& a, LatticePoint y) {
  std::vector<LatticePoint> out;
  for (auto s : kSteps)
    if (a.contains(y + s)) out.push_back(y + s);
  return out;
}

}  // namespace

double HarmonicSolver::excursion_kernel(LatticePoint x, LatticePoint y) const {
  require_boundary(x);
  require_boundary(y);
  if (x == y) throw Error(ErrorCode::SamePoint, "excursion kernel needs distinct points");
  const auto zs = inner_neighbours(domain(), y);
  double total = 0;
  for (auto w : inner_neighbours(domain(), x)) {
    const auto g = solver_.green_column(domain().index_of(w));
    for (auto z : zs) total += g[std::size_t(domain().index_of(z))];
  }
  return total / 16;
}

double HarmonicSolver::excursion_kernel_first_step(LatticePoint x, LatticePoint y) const {
  require_boundary(x);
  require_boundary(y);
  if (x == y) throw Error(ErrorCode::SamePoint, "excursion kernel needs distinct points");
  const auto h = solver_.dirichlet([y](LatticePoint p) { return p == y ? 1.0 : 0.0; });
  double total = 0;
  for (auto z : inner_neighbours(domain(), x)) total += h[std::size_t(domain().index_of(z))];
  return total / 4;
}

HittingMatrix HarmonicSolver::excursion_matrix(std::span<const LatticePoint> xs,
                                               std::span<const LatticePoint> ys) const {
  if (xs.size() != ys.size()) throw Error(ErrorCode::BadParameter, "row and column lists differ in length");
  std::vector<LatticePoint> all(xs.begin(), xs.end());
  all.insert(all.end(), ys.begin(), ys.end());
  for (auto p : all) require_boundary(p);
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error(ErrorCode::DuplicatePoint, "hitting matrix points must be distinct");

  // Distinct inner neighbours of the row points, in a fixed order.
  std::map<LatticePoint, std::size_t> slot;
  std::vector<int> sources;
  for (auto x : xs)
    for (auto w : inner_neighbours(domain(), x))
      if (slot.emplace(w, sources.size()).second) sources.push_back(domain().index_of(w));
  const auto rows = solver_.green_columns(sources);

  HittingMatrix m{{xs.begin(), xs.end()}, {ys.begin(), ys.end()}, std::vector<double>(xs.size() * ys.size())};
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto ws = inner_neighbours(domain(), xs[j]);
    for (std::size_t l = 0; l < ys.size(); ++l) {
      double total = 0;
      for (auto w : ws) {
        const auto& g = rows[slot.at(w)];
        for (auto z : inner_neighbours(domain(), ys[l])) total += g[std::size_t(domain().index_of(z))];
      }
      m.entries[j * ys.size() + l] = total / 16;
    }
  }
  return m;
}

double discrete_laplacian(const HarmonicField& f, LatticePoint x) {
  if (!f.has(x)) throw Error(ErrorCode::MissingNeighbor, "centre point is outside the field's support");
  double s = 0;
  const double c = f.at(x);
  for (auto e : kSteps) {
    if (!f.has(x + e)) throw Error(ErrorCode::MissingNeighbor, "a neighbour is outside the field's support");
    s += f.at(x + e) - c;
  }
  return s / 4;
}

WalkPath sample_exit_walk(const LatticeDomain& a, LatticePoint x, Rng& rng) {
  if (!a.contains(x)) throw Error(ErrorCode::PointOutsideDomain, "walk must start inside the domain");
  WalkPath w{{x}};
  LatticePoint p = x;
  do {
    p = p + kSteps[std::size_t(rng.direction())];
    w.sites.push_back(p);
  } while (a.contains(p));
  return w;
}

WalkPath sample_exit_walk(const LatticeDomain& a, LatticePoint x, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 0);
  return sample_exit_walk(a, x, rng);
}

}  // namespace lerwkit
