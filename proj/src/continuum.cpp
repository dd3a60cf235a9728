#include "lerwkit/continuum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "lerwkit/error.hpp"
#include "lerwkit/five_point.hpp"

namespace lerwkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

void require_mesh(int m) {
  if (m < 2 || m % 2 != 0) throw Error(ErrorCode::BadParameter, "mesh level must be an even integer >= 2");
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

/// Signed difference folded into (-pi, pi].
double angle_delta(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  return d <= -kPi ? d + kTwoPi : d;
}

/// Square indices of A whose closure contains coordinate p of the m-grid,
/// along one axis: one index off the polygon lines, two on them.
int squares_along(int p, int m, int out[2]) {
  const int h = m / 2;
  if ((p + h) % m == 0) {
    out[0] = floor_div(p - h, m);
    out[1] = out[0] + 1;
    return 2;
  }
  out[0] = floor_div(p + h, m);
  return 1;
}

/// Refined grid plus the solver on it.
struct Level {
  int m;
  std::shared_ptr<const LatticeDomain> grid;
  FivePointSolver solver;

  Level(const LatticeDomain& a, int m_, double tol = FivePointSolver::kResidualTolerance)
      : m(m_),
        grid(std::make_shared<const LatticeDomain>(refine_union_of_squares(a, m_))),
        solver(grid, tol) {}

  /// Harmonic extension of log|y| with y the planar position of the node.
  std::vector<double> log_extension() const {
    const double lm = std::log(double(m));
    return solver.dirichlet([lm](LatticePoint b) { return std::log(norm(b)) - lm; });
  }

  int node(LatticePoint x) const { return grid->index_of({x.x * m, x.y * m}); }
};

/// Hitting distribution of the polygon from 0, aggregated onto the edges of
/// A's ccw cycle. Corner nodes split their mass equally among the unit
/// segments meeting there.
std::vector<double> edge_masses(const LatticeDomain& a, const Level& lv) {
  const auto& edges = a.boundary().edges;
  std::unordered_map<LatticePoint, int, LatticePointHash> by_inside_dir;
  auto key = [](const BoundaryEdge& e) {
    // inside*4 + direction packs an edge into one lattice point key.
    const LatticePoint d = e.outside - e.inside;
    const int dir = d.x == 1 ? 0 : d.y == 1 ? 1 : d.x == -1 ? 2 : 3;
    return LatticePoint{e.inside.x * 4 + dir, e.inside.y};
  };
  for (std::size_t i = 0; i < edges.size(); ++i) by_inside_dir.emplace(key(edges[i]), int(i));
  auto edge_pos = [&](LatticePoint inside, LatticePoint outside) {
    auto it = by_inside_dir.find(key({inside, outside}));
    if (it == by_inside_dir.end()) throw std::logic_error("refined boundary node not on the polygon");
    return it->second;
  };

  const int origin = lv.grid->index_of({0, 0});
  const auto g = lv.solver.green_column(origin);
  const auto& rb = lv.grid->boundary();
  std::vector<double> hm(rb.outer.size(), 0.0);
  for (const auto& e : rb.edges)
    hm[std::size_t(lv.grid->outer_index(e.outside))] += 0.25 * g[std::size_t(lv.grid->index_of(e.inside))];

  std::vector<double> mass(edges.size(), 0.0);
  std::vector<int> incident;
  for (std::size_t i = 0; i < rb.outer.size(); ++i) {
    if (hm[i] == 0) continue;
    const LatticePoint b = rb.outer[i];
    int sx[2] = {0, 0}, sy[2] = {0, 0};
    const int nx = squares_along(b.x, lv.m, sx), ny = squares_along(b.y, lv.m, sy);
    incident.clear();
    if (nx == 2 && ny == 1) {
      const LatticePoint l{sx[0], sy[0]}, r{sx[1], sy[0]};
      incident.push_back(a.contains(l) ? edge_pos(l, r) : edge_pos(r, l));
    } else if (nx == 1 && ny == 2) {
      const LatticePoint d{sx[0], sy[0]}, u{sx[0], sy[1]};
      incident.push_back(a.contains(d) ? edge_pos(d, u) : edge_pos(u, d));
    } else if (nx == 2 && ny == 2) {
      // The four unit segments meeting at the corner, each separating a pair
      // of the squares around it.
      const LatticePoint ll{sx[0], sy[0]}, lr{sx[1], sy[0]}, ul{sx[0], sy[1]}, ur{sx[1], sy[1]};
      const std::pair<LatticePoint, LatticePoint> pairs[4] = {{ll, lr}, {ul, ur}, {ll, ul}, {lr, ur}};
      for (auto [p, q] : pairs)
        if (a.contains(p) != a.contains(q)) incident.push_back(a.contains(p) ? edge_pos(p, q) : edge_pos(q, p));
    }
    if (incident.empty()) throw std::logic_error("refined boundary node not on the polygon");
    for (int e : incident) mass[std::size_t(e)] += hm[i] / double(incident.size());
  }
  return mass;
}

/// theta for every outer point of A from per-edge masses.
std::vector<double> angles_from_masses(const LatticeDomain& a, const std::vector<double>& mass) {
  const auto& b = a.boundary();
  const std::size_t ne = mass.size();
  std::vector<double> before(ne + 1, 0.0);
  for (std::size_t i = 0; i < ne; ++i) before[i + 1] = before[i] + mass[i];
  const double total = before[ne];

  std::vector<double> theta(b.outer.size());
  for (std::size_t k = 0; k < b.outer.size(); ++k) {
    const auto& pos = b.edges_of_outer[k];
    // Split the positions into maximal runs of consecutive edges, joining a
    // run that wraps past the anchor.
    std::vector<std::pair<int, int>> runs;  // [first, last]
    for (int p : pos) {
      if (!runs.empty() && runs.back().second + 1 == p)
        runs.back().second = p;
      else
        runs.push_back({p, p});
    }
    if (runs.size() > 1 && runs.front().first == 0 && runs.back().second == int(ne) - 1) {
      runs.front().first = runs.back().first - int(ne);
      runs.pop_back();
    }
    double sx = 0, sy = 0;
    for (auto [f, l] : runs) {
      double start, run_mass;
      if (f < 0) {
        start = before[std::size_t(f + int(ne))] - total;
        run_mass = (total - before[std::size_t(f + int(ne))]) + before[std::size_t(l + 1)];
      } else {
        start = before[std::size_t(f)];
        run_mass = before[std::size_t(l + 1)] - before[std::size_t(f)];
      }
      const double t = kTwoPi * (start + run_mass / 2) / total;
      const double w = runs.size() == 1 ? 1.0 : run_mass;
      sx += w * std::cos(t);
      sy += w * std::sin(t);
    }
    theta[k] = wrap_angle(std::atan2(sy, sx));
  }
  return theta;
}

double richardson(double coarse, double fine, int m_coarse, int m_fine) {
  const double r = std::pow(double(m_fine) / double(m_coarse), kRichardsonOrder);
  return fine + (fine - coarse) / (r - 1);
}

std::vector<int> ray_offsets() { return {1, 2, 4}; }

double ray_fit_from(const LatticeDomain& a, const Level& lv, const std::vector<double>& u) {
  // Least-squares line through (r, mean of u over the four axis points at r).
  double sr = 0, sv = 0, srr = 0, srv = 0;
  const auto rs = ray_offsets();
  for (int r : rs) {
    double v = 0;
    for (auto e : kSteps) {
      const LatticePoint x{e.x * r, e.y * r};
      if (!a.contains(x)) throw Error(ErrorCode::PointOutsideDomain, "ray fit needs the axis points at |x| <= 4");
      v += u[std::size_t(lv.node(x))];
    }
    v /= 4;
    sr += r;
    sv += v;
    srr += double(r) * r;
    srv += r * v;
  }
  const double n = double(rs.size());
  const double slope = (n * srv - sr * sv) / (n * srr - sr * sr);
  return (sv - slope * sr) / n;
}

void require_origin(const LatticeDomain& a) {
  if (!a.origin_included()) throw Error(ErrorCode::OriginMissing, "domain does not contain the origin");
}

}  // namespace

LatticeDomain refine_union_of_squares(const LatticeDomain& a, int m) {
  require_mesh(m);
  const Box& box = a.bounding_box();
  const int h = m / 2;
  const int x0 = box.xmin * m - h, y0 = box.ymin * m - h;
  const int w = box.width() * m + 1, hgt = box.height() * m + 1;
  std::vector<char> seen(std::size_t(w) * std::size_t(hgt), 0);
  std::vector<LatticePoint> nodes;
  auto interior = [&](LatticePoint p) {
    int sx[2] = {0, 0}, sy[2] = {0, 0};
    const int nx = squares_along(p.x, m, sx), ny = squares_along(p.y, m, sy);
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        if (!a.contains({sx[i], sy[j]})) return false;
    return true;
  };
  for (auto c : a.points())
    for (int dy = -h; dy <= h; ++dy)
      for (int dx = -h; dx <= h; ++dx) {
        const LatticePoint p{c.x * m + dx, c.y * m + dy};
        char& s = seen[std::size_t(p.y - y0) * std::size_t(w) + std::size_t(p.x - x0)];
        if (s) continue;
        s = 1;
        if (interior(p)) nodes.push_back(p);
      }
  return LatticeDomain::build(nodes);
}

double ConformalData::g(LatticePoint x) const {
  const int i = domain->index_of(x);
  if (i < 0) throw Error(ErrorCode::PointOutsideDomain, "g requested outside the domain");
  return g_values[std::size_t(i)];
}

double ConformalData::theta(LatticePoint y) const {
  const int i = domain->outer_index(y);
  if (i < 0) throw Error(ErrorCode::NotBoundary, "theta requested at a point that is not on the boundary");
  return theta_boundary[std::size_t(i)];
}

double ConformalData::theta_near(LatticePoint x) const {
  if (domain->on_boundary(x)) return theta(x);
  const auto& outer = domain->boundary().outer;
  std::size_t best = 0;
  std::int64_t best_d = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const auto d = norm2(outer[i] - x);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return theta_boundary[best];
}

ConformalData compute_conformal(const LatticeDomain& a, std::span<const int> mesh_levels, double residual_tolerance) {
  require_origin(a);
  if (mesh_levels.empty()) throw Error(ErrorCode::BadParameter, "at least one mesh level is required");
  for (std::size_t i = 0; i < mesh_levels.size(); ++i) {
    require_mesh(mesh_levels[i]);
    if (i > 0 && mesh_levels[i] <= mesh_levels[i - 1])
      throw Error(ErrorCode::BadParameter, "mesh levels must be strictly increasing");
  }

  ConformalData out;
  out.domain = std::make_shared<const LatticeDomain>(a);
  out.mesh_levels.assign(mesh_levels.begin(), mesh_levels.end());
  const auto& pts = a.points();

  // Only the two finest levels enter the result.
  std::vector<std::vector<double>> g_lv, th_lv;
  std::vector<double> u0_lv;
  const std::size_t first = mesh_levels.size() >= 2 ? mesh_levels.size() - 2 : 0;
  for (std::size_t li = first; li < mesh_levels.size(); ++li) {
    const Level lv(a, mesh_levels[li], residual_tolerance);
    const auto u = lv.log_extension();
    std::vector<double> g(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      g[i] = pts[i] == LatticePoint{0, 0} ? std::numeric_limits<double>::infinity()
                                          : u[std::size_t(lv.node(pts[i]))] - std::log(norm(pts[i]));
    g_lv.push_back(std::move(g));
    u0_lv.push_back(u[std::size_t(lv.node({0, 0}))]);
    th_lv.push_back(angles_from_masses(a, edge_masses(a, lv)));
  }

  if (g_lv.size() == 1) {
    out.g_values = g_lv[0];
    out.g_error.assign(pts.size(), std::numeric_limits<double>::quiet_NaN());
    out.theta_boundary = th_lv[0];
    out.theta_error = std::numeric_limits<double>::quiet_NaN();
    out.neg_log_f_prime = u0_lv[0];
    out.f_prime_error = std::numeric_limits<double>::quiet_NaN();
  } else {
    const int mc = mesh_levels[first], mf = mesh_levels[first + 1];
    out.g_values.resize(pts.size());
    out.g_error.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::isinf(g_lv[1][i])) {
        out.g_values[i] = g_lv[1][i];
        out.g_error[i] = 0;
        continue;
      }
      out.g_values[i] = richardson(g_lv[0][i], g_lv[1][i], mc, mf);
      out.g_error[i] = std::abs(out.g_values[i] - g_lv[1][i]);
    }
    out.neg_log_f_prime = richardson(u0_lv[0], u0_lv[1], mc, mf);
    out.f_prime_error = std::abs(out.neg_log_f_prime - u0_lv[1]);
    out.theta_boundary = th_lv[1];
    double worst = 0;
    for (std::size_t i = 1; i < th_lv[1].size(); ++i) {
      const double d_fine = angle_delta(th_lv[1][i], th_lv[1][0]);
      const double d_coarse = angle_delta(th_lv[0][i], th_lv[0][0]);
      worst = std::max(worst, std::abs(angle_delta(d_fine, d_coarse)));
    }
    out.theta_error = worst;
  }
  out.f_prime_at_0 = std::exp(-out.neg_log_f_prime);
  return out;
}

double continuum_green(const LatticeDomain& a, std::complex<double> x, int m) {
  require_mesh(m);
  const double nx = x.real() * m, ny = x.imag() * m;
  if (std::abs(nx - std::round(nx)) > 1e-9 || std::abs(ny - std::round(ny)) > 1e-9)
    throw Error(ErrorCode::PointOutsideDomain, "sample point is not a node of the refined grid");
  if (std::abs(x) == 0) throw Error(ErrorCode::ZeroPoint, "g is infinite at the origin");
  const Level lv(a, m);
  const int i = lv.grid->index_of({int(std::lround(nx)), int(std::lround(ny))});
  if (i < 0) throw Error(ErrorCode::PointOutsideDomain, "sample point is not inside the domain");
  return lv.log_extension()[std::size_t(i)] - std::log(std::abs(x));
}

std::vector<double> theta_boundary(const LatticeDomain& a, int m) {
  require_origin(a);
  const Level lv(a, m);
  return angles_from_masses(a, edge_masses(a, lv));
}

double map_deriv_at_0(const LatticeDomain& a, int m) {
  require_origin(a);
  const Level lv(a, m);
  return std::exp(-lv.log_extension()[std::size_t(lv.node({0, 0}))]);
}

double map_deriv_ray_fit(const LatticeDomain& a, int m) {
  require_origin(a);
  const Level lv(a, m);
  return std::exp(-ray_fit_from(a, lv, lv.log_extension()));
}

// ---------------------------------------------------------------------------

double disk_green(std::complex<double> x, std::complex<double> y) {
  if (std::abs(x) >= 1 || std::abs(y) >= 1) throw Error(ErrorCode::OutsideDisk, "points must lie in the open unit disk");
  if (x == y) throw Error(ErrorCode::CoincidentPoints, "disk Green's function is infinite on the diagonal");
  return std::log(std::abs(std::conj(y) * x - 1.0)) - std::log(std::abs(y - x));
}

namespace {

/// 1 - cos(d) without cancellation for small d.
double one_minus_cos(double d) {
  const double s = std::sin(d / 2);
  return 2 * s * s;
}

void require_distinct(double a, double b) {
  if (std::abs(angle_delta(a, b)) == 0) throw Error(ErrorCode::CoincidentAngles, "angles coincide");
}

/// n / sinh(n L) and sinh(n r) / sinh(n L) in overflow-free form.
double n_over_sinh(int n, double length) {
  const double e = std::exp(-n * length);
  return 2 * n * e / (1 - e * e);
}

double sinh_ratio(int n, double r, double length) {
  return std::exp(n * (r - length)) * -std::expm1(-2 * n * r) / -std::expm1(-2 * n * length);
}

template <class Term, class Bound>
double sine_series(Term term, Bound bound) {
  double sum = 0;
  for (int n = 1; n < 100000000; ++n) {
    sum += term(n);
    if (bound(n + 1) < 1e-15 * std::abs(sum)) break;
    if (bound(n + 1) < std::numeric_limits<double>::min()) break;
  }
  return 2 / kPi * sum;
}

double det(const Eigen::MatrixXd& m) { return m.rows() == 0 ? 1.0 : m.partialPivLu().determinant(); }

void require_decreasing(std::span<const double> q) {
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!(q[j] > 0 && q[j] < kPi)) throw Error(ErrorCode::BadOrdering, "heights must lie in (0, pi)");
    if (j > 0 && !(q[j] < q[j - 1])) throw Error(ErrorCode::BadOrdering, "heights must be strictly decreasing");
  }
}

}  // namespace

double disk_excursion_kernel(double theta, double theta_prime) {
  require_distinct(theta, theta_prime);
  return 1 / (2 * kPi * one_minus_cos(theta_prime - theta));
}

double rect_excursion_kernel(double length, double q, double q_prime) {
  if (!(length > 0)) throw Error(ErrorCode::NonPositiveLength, "rectangle length must be positive");
  return sine_series([&](int n) { return n_over_sinh(n, length) * std::sin(n * q) * std::sin(n * q_prime); },
                     [&](int n) { return n_over_sinh(n, length); });
}

double rect_interior_kernel(double length, double r, double q, double q_prime) {
  if (!(length > 0)) throw Error(ErrorCode::NonPositiveLength, "rectangle length must be positive");
  if (!(r > 0 && r < length)) throw Error(ErrorCode::OutOfRange, "r must lie in (0, L)");
  return sine_series([&](int n) { return sinh_ratio(n, r, length) * std::sin(n * q) * std::sin(n * q_prime); },
                     [&](int n) { return sinh_ratio(n, r, length); });
}

double lambda_disk(std::span<const double> theta_x, std::span<const double> theta_y) {
  const std::size_t k = theta_x.size();
  if (theta_y.size() != k) throw Error(ErrorCode::BadParameter, "theta_x and theta_y differ in length");
  std::vector<double> all(theta_x.begin(), theta_x.end());
  all.insert(all.end(), theta_y.begin(), theta_y.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) require_distinct(all[i], all[j]);
  Eigen::MatrixXd m(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = 0; l < k; ++l)
      m(Eigen::Index(j), Eigen::Index(l)) =
          one_minus_cos(theta_x[j] - theta_y[j]) / one_minus_cos(theta_x[j] - theta_y[l]);
  return det(m);
}

bool is_ccw_configuration(std::span<const double> theta_x, std::span<const double> theta_y) {
  const std::size_t k = theta_x.size();
  if (theta_y.size() != k || k == 0) return false;
  // Walk x^1..x^k, y^k..y^1 measuring ccw offsets from x^1; they must
  // increase strictly and stay below one turn.
  std::vector<double> seq(theta_x.begin(), theta_x.end());
  for (std::size_t j = k; j-- > 0;) seq.push_back(theta_y[j]);
  double prev = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const double off = wrap_angle(seq[i] - seq[0]);
    if (!(off > prev)) return false;
    prev = off;
  }
  return true;
}

double prop15_leading(std::span<const double> q, std::span<const double> q_prime, double length) {
  const std::size_t k = q.size();
  if (q_prime.size() != k || k == 0) throw Error(ErrorCode::BadParameter, "q and q' must be nonempty and equal in length");
  if (!(length > 0)) throw Error(ErrorCode::NonPositiveLength, "rectangle length must be positive");
  require_decreasing(q);
  require_decreasing(q_prime);
  Eigen::MatrixXd s(k, k), sp(k, k);
  double denom = 1, fact = 1;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l) {
      s(Eigen::Index(j), Eigen::Index(l)) = std::sin(double(l + 1) * q[j]);
      sp(Eigen::Index(j), Eigen::Index(l)) = std::sin(double(l + 1) * q_prime[j]);
    }
    denom *= std::sin(q[j]) * std::sin(q_prime[j]);
    fact *= double(j + 1);
  }
  return fact * det(s) * det(sp) / denom * std::exp(-double(k * (k - 1)) / 2 * length);
}

double lambda_rect_exact(std::span<const double> q, std::span<const double> q_prime, double length) {
  const std::size_t k = q.size();
  if (q_prime.size() != k || k == 0) throw Error(ErrorCode::BadParameter, "q and q' must be nonempty and equal in length");
  require_decreasing(q);
  require_decreasing(q_prime);
  Eigen::MatrixXd h(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = 0; l < k; ++l) h(Eigen::Index(j), Eigen::Index(l)) = rect_excursion_kernel(length, q[j], q_prime[l]);
  for (std::size_t j = 0; j < k; ++j) h.row(Eigen::Index(j)) /= h(Eigen::Index(j), Eigen::Index(j));
  return det(h);
}

std::complex<double> MobiusDisk::apply(std::complex<double> z) const {
  return std::polar(1.0, phi) * (z - a) / (1.0 - std::conj(a) * z);
}

double MobiusDisk::apply_angle(double theta) const { return wrap_angle(std::arg(apply(std::polar(1.0, theta)))); }

MobiusDisk mobius_disk(std::complex<double> a, double phi) {
  if (!(std::abs(a) < 1) || !std::isfinite(phi)) throw Error(ErrorCode::BadParameter, "Mobius parameter must satisfy |a| < 1");
  return {a, phi};
}

double mobius_lambda_change(const MobiusDisk& t, std::span<const double> theta_x, std::span<const double> theta_y) {
  std::vector<double> tx, ty;
  for (double v : theta_x) tx.push_back(t.apply_angle(v));
  for (double v : theta_y) ty.push_back(t.apply_angle(v));
  return std::abs(lambda_disk(tx, ty) - lambda_disk(theta_x, theta_y));
}

bool covariance_check(const MobiusDisk& t, std::span<const double> theta_x, std::span<const double> theta_y,
                      double tolerance) {
  return mobius_lambda_change(t, theta_x, theta_y) <= tolerance;
}

}  // namespace lerwkit
