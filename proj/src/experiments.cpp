#include "lerwkit/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lerwkit/continuum.hpp"
#include "lerwkit/error.hpp"
#include "lerwkit/five_point.hpp"
#include "lerwkit/fomin.hpp"
#include "lerwkit/harmonic.hpp"
#include "lerwkit/potential.hpp"

namespace lerwkit {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_str(LatticePoint p) { return "(" + std::to_string(p.x) + " " + std::to_string(p.y) + ")"; }

template <class T, class F>
std::string join(const std::vector<T>& v, F f) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + f(v[i]);
  return s;
}

std::string ints(const std::vector<int>& v) {
  return join(v, [](int i) { return std::to_string(i); });
}

std::string degrees(const std::vector<double>& v) {
  return join(v, [](double t) { return num(t * 180 / kPi); });
}

double cyclic_gap(double a, double b) { return std::abs(std::remainder(a - b, 2 * kPi)); }

ReportRow make_row(const ExperimentOptions& opt, std::string param, std::string label, double lhs, double rhs) {
  ReportRow r{std::string(to_string(opt.family)), std::move(param), std::move(label), lhs, rhs, 0, 0, 0};
  r.ratio = lhs / rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = std::abs(r.ratio - 1);
  return r;
}

ExperimentReport start_report(std::string id, const ExperimentOptions& opt, bool lattice = true) {
  ExperimentReport rep;
  rep.experiment = std::move(id);
  rep.metadata.push_back({"experiment", rep.experiment});
  if (lattice) {
    rep.metadata.push_back({"family", std::string(to_string(opt.family))});
    rep.metadata.push_back({"n", ints(opt.n_list)});
    rep.metadata.push_back({"solver", std::string(FivePointSolver::kMethod)});
    rep.metadata.push_back({"solver_residual", num(opt.tolerance)});
  }
  return rep;
}

void add_conformal_metadata(ExperimentReport& rep, const ExperimentOptions& opt) {
  rep.metadata.push_back({"mesh", ints(opt.mesh_levels)});
  rep.metadata.push_back({"richardson_order", num(kRichardsonOrder)});
}

void add_gap_metadata(ExperimentReport& rep, const ExperimentOptions& opt) {
  rep.metadata.push_back({"gap_rule", std::string(to_string(opt.gap_rule))});
  rep.metadata.push_back({"x_angles_deg", degrees(opt.x_angles)});
  rep.metadata.push_back({"y_angles_deg", degrees(opt.y_angles)});
}

void require_n(const ExperimentOptions& opt) {
  if (opt.n_list.empty()) throw Error(ErrorCode::BadParameter, "experiment needs at least one n");
  for (int n : opt.n_list)
    if (n < 1) throw Error(ErrorCode::BadParameter, "n must be positive");
}

void require_pair(const ExperimentOptions& opt) {
  if (opt.x_angles.size() != 1 || opt.y_angles.size() != 1)
    throw Error(ErrorCode::BadParameter, "experiment takes one x angle and one y angle");
}

/// Smallest cyclic gap among the angles must reach the threshold.
void check_gap(const std::vector<double>& thetas, GapRule rule, int n) {
  const double need = gap_threshold(rule, n);
  for (std::size_t i = 0; i < thetas.size(); ++i)
    for (std::size_t j = i + 1; j < thetas.size(); ++j)
      if (cyclic_gap(thetas[i], thetas[j]) < need)
        throw Error(ErrorCode::AngularGapTooSmall, "angular gap " + num(cyclic_gap(thetas[i], thetas[j])) +
                                                       " below threshold " + num(need) + " at n=" + std::to_string(n));
}

std::string param_n(int n) { return "n=" + std::to_string(n); }

/// Lattice point nearest to radius n - depth on the ray at `angle`.
LatticePoint interior_point(const LatticeDomain& a, int n, double angle, int depth) {
  const double r = double(n - depth);
  const LatticePoint x{int(std::lround(r * std::cos(angle))), int(std::lround(r * std::sin(angle)))};
  if (!a.contains(x)) throw Error(ErrorCode::PointOutsideDomain, "interior sample point " + point_str(x) + " is not in A");
  return x;
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "disk") return Family::Disk;
  if (name == "square") return Family::Square;
  throw Error(ErrorCode::BadParameter, "unknown family '" + std::string(name) + "'");
}

std::string_view to_string(Family f) noexcept { return f == Family::Disk ? "disk" : "square"; }

LatticeDomain make_family_domain(Family f, int n) { return f == Family::Disk ? lattice_disk(n) : lattice_square(n); }

GapRule parse_gap_rule(std::string_view name) {
  if (name == "power") return GapRule::Power;
  if (name == "literal") return GapRule::Literal;
  if (name == "none") return GapRule::None;
  throw Error(ErrorCode::BadParameter, "unknown gap rule '" + std::string(name) + "'");
}

std::string_view to_string(GapRule r) noexcept {
  switch (r) {
    case GapRule::Power: return "power";
    case GapRule::Literal: return "literal";
    case GapRule::None: return "none";
  }
  return "?";
}

double gap_threshold(GapRule r, int n) {
  const double p = std::pow(double(n), -1.0 / 16);
  switch (r) {
    case GapRule::Power: return p;
    case GapRule::Literal: {
      const double l = std::log(double(n));
      return p * l * l;
    }
    case GapRule::None: return 0;
  }
  return 0;
}

ExperimentOptions default_options(std::string_view experiment) {
  ExperimentOptions o;
  constexpr double d = kPi / 180;
  if (experiment == "thm11") {
    o.n_list = {16, 32, 64};
    o.x_angles = {0};
    o.y_angles = {180 * d};
  } else if (experiment == "thm12") {
    o.n_list = {8, 16, 32, 64};
    o.points = {{0, 0}, {1, 0}};
  } else if (experiment == "cor14") {
    o.n_list = {16, 32, 64};
    o.x_angles = {315 * d, 45 * d};
    o.y_angles = {225 * d, 135 * d};
  } else if (experiment == "prop316") {
    o.n_list = {16, 32, 64};
    o.x_angles = {0};
    o.y_angles = {180 * d};
  } else if (experiment == "prop15") {
    o.k = 2;
    o.lengths = {3, 4, 5, 6};
  } else {
    throw Error(ErrorCode::BadParameter, "unknown experiment '" + std::string(experiment) + "'");
  }
  return o;
}

void ExperimentReport::write_csv(std::ostream& out, std::string_view timestamp) const {
  for (const auto& [k, v] : metadata) out << "# " << k << ": " << v << '\n';
  if (!timestamp.empty()) out << "# timestamp: " << timestamp << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << experiment << ',' << r.family << ',' << r.param << ',' << r.label << ',' << num(r.lhs) << ','
        << num(r.rhs) << ',' << num(r.ratio) << ',' << num(r.abs_err) << ',' << num(r.rel_err) << '\n';
}

ExperimentReport thm11_experiment(const ExperimentOptions& opt) {
  require_n(opt);
  require_pair(opt);
  auto rep = start_report("thm11", opt);
  add_conformal_metadata(rep, opt);
  add_gap_metadata(rep, opt);
  for (int n : opt.n_list) {
    auto a = std::make_shared<const LatticeDomain>(make_family_domain(opt.family, n));
    const LatticePoint x = snap_to_boundary(*a, opt.x_angles[0]), y = snap_to_boundary(*a, opt.y_angles[0]);
    const auto conf = compute_conformal(*a, opt.mesh_levels, opt.tolerance);
    const double tx = conf.theta(x), ty = conf.theta(y);
    check_gap({tx, ty}, opt.gap_rule, n);
    const HarmonicSolver s(a, opt.tolerance);
    const auto h0 = s.poisson_kernel({0, 0});
    const double lhs = s.excursion_kernel(x, y);
    const double rhs = kPi / 2 * h0.at(x) * h0.at(y) / (1 - std::cos(tx - ty));
    rep.rows.push_back(make_row(opt, param_n(n), "x=" + point_str(x) + ";y=" + point_str(y), lhs, rhs));
  }
  return rep;
}

ExperimentReport thm12_experiment(const ExperimentOptions& opt) {
  require_n(opt);
  if (opt.points.empty()) throw Error(ErrorCode::BadParameter, "thm12 needs at least one sample point");
  auto rep = start_report("thm12", opt);
  add_conformal_metadata(rep, opt);
  rep.metadata.push_back({"points", join(opt.points, point_str)});
  rep.metadata.push_back({"green_form", "(2/pi)(-log f'(0)) + k0"});
  const double k0 = potential_constants().k0;
  for (int n : opt.n_list) {
    auto a = std::make_shared<const LatticeDomain>(make_family_domain(opt.family, n));
    for (auto x : opt.points)
      if (!a->contains(x)) throw Error(ErrorCode::PointOutsideDomain, "sample point " + point_str(x) + " not in A");
    const auto conf = compute_conformal(*a, opt.mesh_levels, opt.tolerance);
    const HarmonicSolver s(a, opt.tolerance);
    const auto g0 = s.green_row({0, 0});
    for (auto x : opt.points) {
      const double lhs = g0.at(x);
      const double rhs = x == LatticePoint{0, 0} ? 2 / kPi * conf.neg_log_f_prime + k0 : 2 / kPi * conf.g(x) + k_x(x);
      rep.rows.push_back(make_row(opt, param_n(n), "x=" + point_str(x), lhs, rhs));
    }
  }
  return rep;
}

ExperimentReport cor14_experiment(const ExperimentOptions& opt) {
  require_n(opt);
  if (opt.x_angles.empty() || opt.x_angles.size() != opt.y_angles.size())
    throw Error(ErrorCode::BadParameter, "cor14 needs k x angles and k y angles");
  auto rep = start_report("cor14", opt);
  add_conformal_metadata(rep, opt);
  add_gap_metadata(rep, opt);
  const std::size_t k = opt.x_angles.size();
  for (int n : opt.n_list) {
    auto a = std::make_shared<const LatticeDomain>(make_family_domain(opt.family, n));
    std::vector<LatticePoint> xs, ys;
    for (double t : opt.x_angles) xs.push_back(snap_to_boundary(*a, t));
    for (double t : opt.y_angles) ys.push_back(snap_to_boundary(*a, t));
    const auto cfg = make_crossing_config(a, xs, ys);
    const auto conf = compute_conformal(*a, opt.mesh_levels, opt.tolerance);
    std::vector<double> tx, ty, all;
    for (auto p : xs) tx.push_back(conf.theta(p));
    for (auto p : ys) ty.push_back(conf.theta(p));
    all = tx;
    all.insert(all.end(), ty.begin(), ty.end());
    check_gap(all, opt.gap_rule, n);

    const HarmonicSolver s(a, opt.tolerance);
    const auto m = crossing_matrix(s, cfg);
    const double lhs = conditional_det(m);
    const double rhs = lambda_disk(tx, ty);
    const std::string label = "x=" + join(xs, point_str) + ";y=" + join(ys, point_str);
    rep.rows.push_back(make_row(opt, param_n(n), "cond_det " + label, lhs, rhs));

    // Entrywise ratios of the normalised discrete matrix to the disk one.
    double eps = 0, sup_b = 0;
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        const double c = (1 - std::cos(tx[j] - ty[j])) / (1 - std::cos(tx[j] - ty[l]));
        const double b = m(j, l) / m(j, j);
        eps = std::max(eps, std::abs(b / c - 1));
        sup_b = std::max(sup_b, std::abs(c));
      }
    rep.rows.push_back(make_row(opt, param_n(n), "perturbation_bound eps=" + num(eps), std::abs(lhs - rhs),
                                det_perturbation_bound(int(k), eps, sup_b)));
  }
  return rep;
}

ExperimentReport prop316_experiment(const ExperimentOptions& opt) {
  require_n(opt);
  require_pair(opt);
  if (opt.depth < 1) throw Error(ErrorCode::BadParameter, "depth must be at least 1");
  auto rep = start_report("prop316", opt);
  add_conformal_metadata(rep, opt);
  add_gap_metadata(rep, opt);
  rep.metadata.push_back({"depth", std::to_string(opt.depth)});
  rep.metadata.push_back({"interior_theta", "nearest boundary point"});
  for (int n : opt.n_list) {
    auto a = std::make_shared<const LatticeDomain>(make_family_domain(opt.family, n));
    const LatticePoint x = interior_point(*a, n, opt.x_angles[0], opt.depth);
    const LatticePoint y = interior_point(*a, n, opt.y_angles[0], opt.depth);
    const auto conf = compute_conformal(*a, opt.mesh_levels, opt.tolerance);
    const double tx = conf.theta_near(x), ty = conf.theta_near(y);
    check_gap({tx, ty}, opt.gap_rule, n);
    const HarmonicSolver s(a, opt.tolerance);
    const auto gx = s.green_row(x);
    const double lhs = gx.at(y);
    const double rhs = kPi / 2 * gx.at({0, 0}) * s.green(y, {0, 0}) / (1 - std::cos(tx - ty));
    rep.rows.push_back(make_row(opt, param_n(n), "x=" + point_str(x) + ";y=" + point_str(y), lhs, rhs));
  }
  return rep;
}

ExperimentReport prop15_experiment(const ExperimentOptions& opt) {
  if (opt.k < 1) throw Error(ErrorCode::BadParameter, "k must be at least 1");
  if (opt.lengths.empty()) throw Error(ErrorCode::BadParameter, "prop15 needs at least one length");
  auto rep = start_report("prop15", opt, false);
  std::vector<double> q;
  for (int j = 1; j <= opt.k; ++j) q.push_back(kPi * double(opt.k + 1 - j) / double(opt.k + 1));
  rep.metadata.push_back({"k", std::to_string(opt.k)});
  rep.metadata.push_back({"q", join(q, num)});
  rep.metadata.push_back({"L", join(opt.lengths, num)});
  rep.metadata.push_back({"series_truncation", "term bound < 1e-15 * partial sum"});
  for (double L : opt.lengths) {
    ReportRow r = make_row(opt, "L=" + num(L), "k=" + std::to_string(opt.k), lambda_rect_exact(q, q, L),
                           prop15_leading(q, q, L));
    r.family = "rectangle";
    rep.rows.push_back(r);
  }
  return rep;
}

ExperimentReport run_experiment(std::string_view experiment, const ExperimentOptions& opt) {
  if (experiment == "thm11") return thm11_experiment(opt);
  if (experiment == "thm12") return thm12_experiment(opt);
  if (experiment == "cor14") return cor14_experiment(opt);
  if (experiment == "prop316") return prop316_experiment(opt);
  if (experiment == "prop15") return prop15_experiment(opt);
  throw Error(ErrorCode::BadParameter, "unknown experiment '" + std::string(experiment) + "'");
}

}  // namespace lerwkit
