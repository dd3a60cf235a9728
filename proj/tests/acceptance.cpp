// Acceptance run: one PASS/FAIL line per criterion with its wall time and
// budget. The exit status is nonzero when a criterion fails, except for the
// criteria listed in kKnownUnattainable, whose failure is expected and
// documented in the README.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lerwkit/cli.hpp"
#include "lerwkit/continuum.hpp"
#include "lerwkit/exact.hpp"
#include "lerwkit/experiments.hpp"
#include "lerwkit/fomin.hpp"
#include "lerwkit/harmonic.hpp"
#include "lerwkit/lerw.hpp"
#include "lerwkit/potential.hpp"
#include "oracles.hpp"

using namespace lerwkit;

namespace {

/// The exact rectangle determinant at q = q' = (2pi/3, pi/3) is
/// 8 e^{-L} (1 - 4 e^{-L} + ...), so its relative distance from 8 e^{-L} at
/// L = 6 is about 1e-2 and the log-difference over L = 4..6 is about 1.94.
const std::set<int> kKnownUnattainable{4};

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && out_.pass) out_.detail = "failed: " + what;
    out_.pass = out_.pass && ok;
  }
  void note(const std::string& s) {
    if (out_.pass) out_.detail = s;
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Outcome closed_forms() {
  Checker c;
  const std::vector<LatticePoint> one{{0, 0}};
  const auto single = LatticeDomain::build(one);
  HarmonicSolver s1(single);
  c.require(std::abs(s1.green({0, 0}, {0, 0}) - 1) < 1e-10, "G_{0}(0,0) = 1");
  for (double v : s1.poisson_kernel({0, 0}).values) c.require(std::abs(v - 0.25) < 1e-10, "h_{0}(0,.) = 1/4");
  c.require(std::abs(s1.excursion_kernel({1, 0}, {0, 1}) - 1.0 / 16) < 1e-10, "h_d(e1,e2) = 1/16");
  c.require(exact::excursion_kernel(single, {1, 0}, {0, 1}) == exact::Rational(1, 16), "exact 1/16");

  const auto plus = plus_shape();
  HarmonicSolver s(plus);
  c.require(std::abs(s.green({0, 0}, {0, 0}) - 4.0 / 3) < 1e-10, "plus G(0,0) = 4/3");
  c.require(std::abs(s.green({0, 0}, {1, 0}) - 1.0 / 3) < 1e-10, "plus G(0,e1) = 1/3");
  const auto h = s.poisson_kernel({0, 0});
  c.require(std::abs(h.at({2, 0}) - 1.0 / 12) < 1e-10, "plus h(0,(2,0)) = 1/12");
  c.require(std::abs(h.at({1, 1}) - 1.0 / 6) < 1e-10, "plus h(0,(1,1)) = 1/6");
  const auto g = exact::green_row(plus, {0, 0});
  c.require(g[std::size_t(plus.index_of({0, 0}))] == exact::Rational(4, 3), "exact 4/3");
  c.require(g[std::size_t(plus.index_of({1, 0}))] == exact::Rational(1, 3), "exact 1/3");
  const auto he = exact::poisson_kernel(plus, {0, 0});
  c.require(he[std::size_t(plus.outer_index({2, 0}))] == exact::Rational(1, 12), "exact 1/12");
  c.require(he[std::size_t(plus.outer_index({1, 1}))] == exact::Rational(1, 6), "exact 1/6");
  c.note("floating to 1e-10 and rational exact");
  return c.result();
}

Outcome identity_suite() {
  Checker c;
  double worst_sum = 0, worst_sym = 0, worst_pot = 0, worst_exc = 0;
  std::size_t largest = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto a = random_domain(std::size_t(40 + 8 * seed), seed);
    largest = std::max(largest, a.size());
    HarmonicSolver s(a);
    const auto& pts = a.points();
    const auto& outer = a.boundary().outer;
    Rng rng(1000 + seed);
    for (int t = 0; t < 4; ++t) {
      const auto x = pts[rng.below(pts.size())], y = pts[rng.below(pts.size())];
      double total = 0;
      for (double v : s.poisson_kernel(x).values) total += v;
      worst_sum = std::max(worst_sum, std::abs(total - 1));
      worst_sym = std::max(worst_sym, std::abs(s.green(x, y) - s.green(y, x)));
      worst_pot = std::max(worst_pot, std::abs(s.green_row(x).at({0, 0}) - s.green_via_potential(x)));
      const auto bx = outer[rng.below(outer.size())];
      auto by = outer[rng.below(outer.size())];
      if (by == bx) by = outer[(std::size_t(a.outer_index(bx)) + 1) % outer.size()];
      worst_exc = std::max(worst_exc, std::abs(s.excursion_kernel(bx, by) - s.excursion_kernel_first_step(bx, by)));
    }
  }
  c.require(largest <= 500, "domains within 500 points");
  c.require(worst_sum <= 1e-10, "sum h = 1");
  c.require(worst_sym <= 1e-10, "G symmetry");
  c.require(worst_pot <= 1e-9, "green_row vs green_via_potential");
  c.require(worst_exc <= 1e-10, "excursion routes");
  c.note("largest domain " + std::to_string(largest) + " points; max deviations " + fmt(worst_sum) + ", " +
         fmt(worst_sym) + ", " + fmt(worst_pot) + ", " + fmt(worst_exc));
  return c.result();
}

Outcome fomin_cross_check() {
  Checker c;
  auto a = std::make_shared<const LatticeDomain>(lattice_disk(8));
  constexpr double deg = std::numbers::pi / 180;
  const std::vector<LatticePoint> xs{snap_to_boundary(*a, 60 * deg), snap_to_boundary(*a, 210 * deg)};
  const std::vector<LatticePoint> ys{snap_to_boundary(*a, 30 * deg), snap_to_boundary(*a, 240 * deg)};
  const auto cfg = make_crossing_config(a, xs, ys);
  const double det = fomin_det(cfg);
  const auto est = crossing_probability_mc(cfg, 1000000, 1);
  const double dev = std::abs(est.estimate - det);
  c.require(est.std_error > 0, "nonzero standard error");
  c.require(dev <= 3 * est.std_error, "|MC - det| <= 3 sigma");
  c.note("det " + fmt(det) + ", MC " + fmt(est.estimate) + " +- " + fmt(est.std_error) + " (" +
         fmt(dev / est.std_error) + " sigma)");
  return c.result();
}

Outcome rectangle_anchor() {
  Checker c;
  const std::vector<double> q{2 * std::numbers::pi / 3, std::numbers::pi / 3};
  const double l6 = lambda_rect_exact(q, q, 6), l4 = lambda_rect_exact(q, q, 4);
  const double rel = std::abs(l6 / (8 * std::exp(-6.0)) - 1);
  const double slope = std::log(l4) - std::log(l6);
  c.require(rel <= 1e-3, "Lambda(6) within 1e-3 of 8e^-6 (relative " + fmt(rel) + ")");
  c.require(std::abs(slope - 2) <= 0.01, "ln Lambda(4) - ln Lambda(6) = 2 +- 0.01 (got " + fmt(slope) + ")");
  c.note("relative " + fmt(rel) + ", log-difference " + fmt(slope));
  return c.result();
}

Outcome green_decay() {
  Checker c;
  ExperimentOptions opt = default_options("thm12");
  opt.n_list = {8, 16, 32, 64};
  opt.points = {{0, 0}};
  opt.mesh_levels = {4, 8};
  const auto rep = thm12_experiment(opt);
  c.require(rep.rows.size() == 4, "one row per n");
  if (rep.rows.size() != 4) return c.result();
  const double e8 = rep.rows.front().abs_err, e64 = rep.rows.back().abs_err;
  c.require(e64 < e8, "error at n=64 below n=8");
  c.require(e64 < 0.02, "error at n=64 below 0.02");
  std::string d = "abs_err";
  for (const auto& r : rep.rows) d += " " + r.param + ":" + fmt(r.abs_err);
  c.note(d);
  return c.result();
}

Outcome excursion_decay() {
  Checker c;
  ExperimentOptions opt = default_options("thm11");
  opt.n_list = {16, 32, 64};
  const auto rep = thm11_experiment(opt);
  c.require(rep.rows.size() == 3, "one row per n");
  if (rep.rows.size() != 3) return c.result();
  std::string d = "|ratio-1|";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const double e = std::abs(rep.rows[i].ratio - 1);
    if (i > 0) c.require(e < std::abs(rep.rows[i - 1].ratio - 1), "decreasing in n");
    d += " " + rep.rows[i].param + ":" + fmt(e);
  }
  c.require(std::abs(rep.rows.back().ratio - 1) <= 0.1, "at most 0.1 at n=64");
  c.note(d);
  return c.result();
}

Outcome mobius_invariance() {
  Checker c;
  Rng rng(99);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const double r = 0.95 * std::sqrt(rng.uniform()), arg = 2 * std::numbers::pi * rng.uniform();
    const auto m = mobius_disk(std::polar(r, arg), 2 * std::numbers::pi * rng.uniform());
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<double> ang(2 * k);
      for (auto& v : ang) v = 2 * std::numbers::pi * rng.uniform();
      std::sort(ang.begin(), ang.end());
      std::vector<double> tx(ang.begin(), ang.begin() + std::ptrdiff_t(k)), ty(ang.rbegin(), ang.rbegin() + std::ptrdiff_t(k));
      worst = std::max(worst, mobius_lambda_change(m, tx, ty));
    }
  }
  c.require(worst <= 1e-9, "|dLambda| <= 1e-9");
  c.note("max |dLambda| " + fmt(worst));
  return c.result();
}

Outcome loop_erasure_suite() {
  Checker c;
  using P = LatticePoint;
  c.require(loop_erase({{{0, 0}, {1, 0}}}).sites == std::vector<P>{{0, 0}, {1, 0}}, "example 1");
  c.require(loop_erase({{{0, 0}, {1, 0}, {0, 0}, {0, 1}}}).sites == std::vector<P>{{0, 0}, {0, 1}}, "example 2");
  c.require(loop_erase({{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}, {0, -1}}}).sites == std::vector<P>{{0, 0}, {0, -1}},
            "example 3");
  Rng rng(4242);
  for (int t = 0; t < 10000; ++t) {
    WalkPath w{{{0, 0}}};
    const int len = int(rng.below(400));
    for (int i = 0; i < len; ++i) w.sites.push_back(w.sites.back() + kSteps[std::size_t(rng.direction())]);
    const auto e = loop_erase(w);
    c.require(is_self_avoiding(e.sites), "self-avoidance");
    c.require(e.sites.front() == w.sites.front() && e.sites.back() == w.sites.back(), "endpoints");
    c.require(loop_erase(WalkPath{e.sites}).sites == e.sites, "idempotence");
    c.require(e.sites == oracle::erase_loops_as_formed(w.sites), "agreement with the erase-as-formed oracle");
  }
  c.note("3 examples, 10^4 fuzzed walks");
  return c.result();
}

Outcome potential_suite() {
  Checker c;
  c.require(potential_a({0, 0}) == 0, "a(0) = 0");
  c.require(std::abs(potential_a({1, 0}) - 1) < 1e-10, "a(1,0) = 1");
  c.require(std::abs(potential_a({1, 1}) - 4 / std::numbers::pi) < 1e-10, "a(1,1) = 4/pi");
  const double k0 = (2 * std::numbers::egamma + 3 * std::numbers::ln2) / std::numbers::pi;
  c.require(std::abs(potential_constants().k0 - k0) < 1e-12, "k0");
  double worst = 0;
  for (int x = -30; x <= 30; ++x)
    for (int y = -30; y <= 30; ++y) {
      if (x * x + y * y > 900 || (x == 0 && y == 0)) continue;
      double s = 0;
      for (auto e : kSteps) s += potential_a(LatticePoint{x, y} + e);
      worst = std::max(worst, std::abs(s / 4 - potential_a({x, y})));
    }
  c.require(worst <= 1e-10, "harmonic off the origin");
  c.note("max harmonicity residual " + fmt(worst));
  return c.result();
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line))
    if (!line.starts_with("# timestamp:")) kept += line + "\n";
  return kept;
}

Outcome determinism() {
  Checker c;
  const std::vector<std::vector<std::string>> commands{
      {"experiment", "thm11", "--n", "8,16", "--mesh", "2,4"},
      {"experiment", "cor14", "--n", "8,16", "--mesh", "2,4"},
      {"experiment", "thm12", "--n", "8,16", "--mesh", "2,4"},
      {"experiment", "prop316", "--n", "8,16", "--mesh", "2,4"},
      {"experiment", "prop15", "--k", "2", "--L", "3,4,5,6"},
  };
  for (const auto& cmd : commands) {
    std::ostringstream o1, o2, err;
    const int s1 = cli::run(cmd, o1, err), s2 = cli::run(cmd, o2, err);
    c.require(s1 == 0 && s2 == 0, cmd[1] + " ran");
    c.require(strip_timestamp(o1.str()) == strip_timestamp(o2.str()), cmd[1] + " byte-identical");
  }
  c.note("5 experiments re-run byte-identically");
  return c.result();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "closed-form exactness", 1, closed_forms},
      {2, "identity suite on 50 random domains", 60, identity_suite},
      {3, "Fomin determinant vs Monte Carlo", 300, fomin_cross_check},
      {4, "rectangle crossing exponent anchor", 1, rectangle_anchor},
      {5, "Green's function error decay", 300, green_decay},
      {6, "excursion kernel error decay", 300, excursion_decay},
      {7, "Mobius invariance of Lambda", 1, mobius_invariance},
      {8, "loop erasure properties", 10, loop_erasure_suite},
      {9, "potential kernel", 10, potential_suite},
      {10, "determinism of experiment CSV", 60, determinism},
  };
  int unexpected = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt(cr.budget_s) + " s budget";
    }
    const bool known = kKnownUnattainable.contains(cr.id);
    if (!o.pass && !known) ++unexpected;
    std::printf("%s criterion %d: %s (%.2f s / %.0f s) %s%s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                cr.budget_s, o.detail.c_str(), !o.pass && known ? " [known unattainable, see README]" : "");
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
