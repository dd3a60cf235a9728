#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>
#include <omp.h>

#include "lerwkit/error.hpp"
#include "lerwkit/fomin.hpp"
#include "lerwkit/harmonic.hpp"
#include "lerwkit/lerw.hpp"
#include "oracles.hpp"

using namespace lerwkit;

namespace {

using P = LatticePoint;

std::shared_ptr<const LatticeDomain> shared(std::vector<P> pts) {
  return std::make_shared<const LatticeDomain>(LatticeDomain::build(pts));
}

/// 1-wide horizontal corridor {(0,0), ..., (4,0)}.
std::shared_ptr<const LatticeDomain> corridor() {
  std::vector<P> pts;
  for (int x = 0; x <= 4; ++x) pts.push_back({x, 0});
  return shared(pts);
}

}  // namespace

TEST_CASE("loop erasure examples") {
  CHECK(loop_erase({{{0, 0}, {1, 0}}}).sites == std::vector<P>{{0, 0}, {1, 0}});
  CHECK(loop_erase({{{0, 0}, {1, 0}, {0, 0}, {0, 1}}}).sites == std::vector<P>{{0, 0}, {0, 1}});
  CHECK(loop_erase({{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}, {0, -1}}}).sites == std::vector<P>{{0, 0}, {0, -1}});
  CHECK(loop_erase({{{3, 3}}}).sites == std::vector<P>{{3, 3}});
  CHECK_THROWS_AS(loop_erase({}), Error);
}

TEST_CASE("loop erasure properties on random walks") {
  Rng rng(2718);
  for (int trial = 0; trial < 10000; ++trial) {
    WalkPath w{{{0, 0}}};
    const int len = int(rng.below(300));
    for (int i = 0; i < len; ++i) w.sites.push_back(w.sites.back() + kSteps[std::size_t(rng.direction())]);
    const auto e = loop_erase(w);
    CHECK(e.sites == oracle::erase_loops_as_formed(w.sites));
    CHECK(is_self_avoiding(e.sites));
    CHECK(is_nearest_neighbour(e.sites));
    CHECK(e.sites.front() == w.sites.front());
    CHECK(e.sites.back() == w.sites.back());
    CHECK(loop_erase(WalkPath{e.sites}).sites == e.sites);
    // Chronological subsequence.
    std::size_t j = 0;
    for (auto p : e.sites) {
      while (j < w.sites.size() && w.sites[j] != p) ++j;
      REQUIRE(j < w.sites.size());
      ++j;
    }
  }
}

TEST_CASE("LERW from the boundary of a single site") {
  const std::vector<P> one{{0, 0}};
  auto a = LatticeDomain::build(one);
  long via_origin = 0, n = 200000;
  for (long i = 0; i < n; ++i) {
    Rng r = Rng::stream(11, std::uint64_t(i));
    const auto s = sample_lerw(a, {1, 0}, r);
    CHECK(is_self_avoiding(s.path.sites));
    if (s.exit == P{0, 1}) {
      CHECK(s.path.sites == std::vector<P>{{1, 0}, {0, 0}, {0, 1}});
      ++via_origin;
    }
  }
  const double p = 1.0 / 16;
  CHECK(std::abs(double(via_origin) / double(n) - p) < 4 * std::sqrt(p * (1 - p) / double(n)));
  CHECK_THROWS_AS(sample_lerw(a, {3, 0}, 1), Error);
  CHECK(sample_lerw(a, {1, 0}, 9).path.sites == sample_lerw(a, {1, 0}, 9).path.sites);
}

TEST_CASE("LERW exit law is the excursion kernel plus immediate exits") {
  auto a = plus_shape();
  HarmonicSolver s(a);
  const P x{2, 0};
  std::map<P, long> counts;
  const long n = 1000000;
  for (long i = 0; i < n; ++i) {
    Rng r = Rng::stream(31, std::uint64_t(i));
    ++counts[sample_lerw(a, x, r).exit];
  }
  for (auto y : a.boundary().outer) {
    if (y == x) continue;
    const double p = s.excursion_kernel(x, y) + (adjacent(x, y) ? 0.25 : 0.0);
    const double est = double(counts[y]) / double(n);
    CHECK(std::abs(est - p) <= 4 * std::sqrt(p * (1 - p) / double(n)));
  }
}

TEST_CASE("crossing config validation") {
  auto a = std::make_shared<const LatticeDomain>(plus_shape());
  const auto cfg = make_crossing_config(a, {{2, 0}, {0, 2}}, {{0, -2}, {-2, 0}});
  CHECK(cfg.positions.size() == 4);
  auto code = [&](std::vector<P> xs, std::vector<P> ys) {
    try {
      make_crossing_config(a, xs, ys);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Empty;
  };
  CHECK(code({{2, 0}, {0, 2}}, {{-2, 0}, {0, -2}}) == ErrorCode::BadOrdering);
  CHECK(code({{2, 0}, {2, 0}}, {{-2, 0}, {0, -2}}) == ErrorCode::DuplicatePoint);
  CHECK(code({{0, 0}}, {{-2, 0}}) == ErrorCode::NotBoundary);
  CHECK(code({{2, 0}}, {}) == ErrorCode::BadParameter);
}

TEST_CASE("single-path crossing matches the excursion kernel") {
  const std::vector<P> one{{0, 0}};
  auto a = std::make_shared<const LatticeDomain>(LatticeDomain::build(one));
  const auto cfg = make_crossing_config(a, {{1, 0}}, {{0, 1}});
  const auto r = crossing_probability_mc(cfg, 1000000, 7);
  CHECK(r.samples == 1000000);
  CHECK(r.seed == 7);
  CHECK(std::abs(r.estimate - 1.0 / 16) <= 4 * r.std_error);

  auto d = std::make_shared<const LatticeDomain>(lattice_disk(4));
  const auto c2 = make_crossing_config(d, {snap_to_boundary(*d, 0.5)}, {snap_to_boundary(*d, 3.0)});
  const auto e2 = crossing_probability_mc(c2, 400000, 3);
  CHECK(std::abs(e2.estimate - fomin_det(c2)) <= 4 * e2.std_error);
  CHECK(e2.estimate >= 0);
  CHECK(e2.estimate <= 1);
}

TEST_CASE("blocked corridor has zero crossing probability") {
  auto a = corridor();
  // x1 at the left end, x2 below the middle, y2 at the right end, y1 above
  // the middle: walk 2 must step onto the first loop erasure.
  const auto cfg = make_crossing_config(a, {{-1, 0}, {2, -1}}, {{2, 1}, {5, 0}});
  CHECK(crossing_probability_mc(cfg, 100000, 1).hits == 0);
  CHECK(std::abs(fomin_det(cfg)) < 1e-15);
}

TEST_CASE("two paths on a disk agree with the determinant") {
  auto d = std::make_shared<const LatticeDomain>(lattice_disk(5));
  const double deg = std::numbers::pi / 180;
  // Paths 70 -> 20 degrees and 200 -> 250 degrees.
  const auto cfg = make_crossing_config(d, {snap_to_boundary(*d, 70 * deg), snap_to_boundary(*d, 200 * deg)},
                                        {snap_to_boundary(*d, 20 * deg), snap_to_boundary(*d, 250 * deg)});
  const auto r = crossing_probability_mc(cfg, 1000000, 99);
  CHECK(r.hits > 30);
  CHECK(std::abs(r.estimate - fomin_det(cfg)) <= 4 * r.std_error);
}

TEST_CASE("parallel and serial estimates are identical") {
  auto d = std::make_shared<const LatticeDomain>(lattice_disk(6));
  const auto cfg = make_crossing_config(d, {snap_to_boundary(*d, 0.1), snap_to_boundary(*d, 1.2)},
                                        {snap_to_boundary(*d, 4.0), snap_to_boundary(*d, 3.0)});
  const auto serial = crossing_probability_mc_serial(cfg, 20000, 5);
  for (int threads : {1, 3, 4}) {
    omp_set_num_threads(threads);
    const auto par = crossing_probability_mc(cfg, 20000, 5);
    CHECK(par.hits == serial.hits);
    CHECK(par.estimate == serial.estimate);
  }
  omp_set_num_threads(1);
  // Fixed seed, fixed event.
  Rng r1 = Rng::stream(42, 3), r2 = Rng::stream(42, 3);
  CHECK(crossing_event_sample(cfg, r1) == crossing_event_sample(cfg, r2));
  CHECK_THROWS_AS(crossing_probability_mc(cfg, 0, 1), Error);
}
