#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "lerwkit/error.hpp"
#include "lerwkit/lattice.hpp"
#include "lerwkit/rng.hpp"
#include "oracles.hpp"

using namespace lerwkit;

namespace {

ErrorCode build_error(const std::vector<LatticePoint>& pts) {
  try {
    LatticeDomain::build(pts);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected build to throw");
  return ErrorCode::Empty;
}

std::size_t position_of(const BoundaryData& b, LatticePoint outside) {
  auto it = std::find_if(b.edges.begin(), b.edges.end(), [&](const BoundaryEdge& e) { return e.outside == outside; });
  REQUIRE(it != b.edges.end());
  return std::size_t(it - b.edges.begin());
}

}  // namespace

TEST_CASE("build_domain validates connectivity") {
  const std::vector<LatticePoint> single{{0, 0}};
  auto a = LatticeDomain::build(single);
  CHECK(a.size() == 1);
  CHECK(a.origin_included());
  CHECK(a.inradius() == 1);

  auto plus = plus_shape();
  CHECK(plus.size() == 5);

  std::vector<LatticePoint> ring;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y)
      if (x != 0 || y != 0) ring.push_back({x, y});
  CHECK(oracle::euler_characteristic(ring) == 0);
  CHECK(build_error(ring) == ErrorCode::NotSimplyConnected);

  CHECK(build_error({{0, 0}, {2, 0}}) == ErrorCode::NotConnected);
  CHECK(build_error({{0, 0}, {1, 1}}) == ErrorCode::NotConnected);
  CHECK(build_error({}) == ErrorCode::Empty);
}

TEST_CASE("simple connectivity agrees with the Euler characteristic oracle") {
  Rng rng(12345);
  int holes = 0, ok = 0;
  for (int trial = 0; trial < 400; ++trial) {
    // Random connected blob: a random walk's trace on a small box.
    std::vector<LatticePoint> pts{{0, 0}};
    LatticePoint p{0, 0};
    const int steps = 5 + int(rng.below(60));
    for (int s = 0; s < steps; ++s) {
      p = p + kSteps[std::size_t(rng.direction())];
      pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const bool simple = oracle::euler_characteristic(pts) == 1;
    try {
      LatticeDomain::build(pts);
      CHECK(simple);
      ++ok;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSimplyConnected);
      CHECK_FALSE(simple);
      ++holes;
    }
  }
  CHECK(holes > 10);
  CHECK(ok > 10);
}

TEST_CASE("lattice_disk sizes match brute-force counts") {
  CHECK(lattice_disk(1).size() == 5);
  CHECK(lattice_disk(2).size() == 13);
  CHECK(lattice_disk(8).size() == 197);
  for (int n : {3, 5, 16, 32}) CHECK(long(lattice_disk(n).size()) == oracle::count_disk(long(n) * n));
  for (int n : {1, 2, 4, 8, 16, 32, 64}) {
    auto d = lattice_disk(n);
    CHECK(d.inradius_exact() >= n);
    CHECK(d.inradius_exact() < n + 1);
    CHECK(d.inradius() >= n);
    CHECK(d.inradius() <= 2 * n);
  }
  CHECK(lattice_disk(8).inradius_exact() == doctest::Approx(std::sqrt(65.0)));
}

TEST_CASE("inradius and radius") {
  CHECK(plus_shape().radius() == 1);
  CHECK(lattice_square(3).inradius() == 4);
  const std::vector<LatticePoint> off{{1, 0}};
  auto a = LatticeDomain::build(off);
  CHECK_THROWS_AS(a.inradius(), Error);
}

TEST_CASE("boundary sets of small domains") {
  const std::vector<LatticePoint> single{{0, 0}};
  const auto& b = LatticeDomain::build(single).boundary();
  CHECK(b.outer.size() == 4);
  CHECK(b.edges.size() == 4);
  CHECK(b.inner.size() == 1);

  auto plus = plus_shape();
  CHECK(plus.boundary().outer.size() == 8);
  CHECK(plus.boundary().edges.size() == 12);
  CHECK(plus.boundary().inner.size() == 4);
  for (const auto& e : plus.boundary().edges) {
    CHECK(plus.contains(e.inside));
    CHECK_FALSE(plus.contains(e.outside));
    CHECK(adjacent(e.inside, e.outside));
  }
}

TEST_CASE("ccw cycle orders the disk boundary counterclockwise") {
  auto d = lattice_disk(1);
  const auto& b = d.boundary();
  const auto i0 = position_of(b, {2, 0}), i1 = position_of(b, {1, 1}), i2 = position_of(b, {0, 2});
  // Cyclic order i0 -> i1 -> i2.
  const auto n = b.edges.size();
  CHECK((i1 + n - i0) % n < (i2 + n - i0) % n);

  // Polar angle of the outer points is non-decreasing (mod one wrap) along
  // the cycle of a convex-ish domain.
  auto big = lattice_disk(16);
  int wraps = 0;
  const auto& e = big.boundary().edges;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double a = polar_angle(e[i].inside), c = polar_angle(e[(i + 1) % e.size()].inside);
    if (c + 1e-12 < a) ++wraps;
  }
  CHECK(wraps == 1);
}

TEST_CASE("edge boundary invariants on generated domains") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto a = random_domain(20 + 17 * seed, seed);
    const auto& b = a.boundary();
    // Closed polygon: consecutive segments share endpoints.
    for (std::size_t i = 0; i < b.edges.size(); ++i) {
      const auto& e = b.edges[i];
      const auto& f = b.edges[(i + 1) % b.edges.size()];
      const LatticePoint d = e.outside - e.inside, t{-d.y, d.x};
      const LatticePoint d2 = f.outside - f.inside, t2{-d2.y, d2.x};
      CHECK((e.inside + e.outside + t) == (f.inside + f.outside - t2));
    }
    std::size_t counted = 0;
    for (const auto& v : b.edges_of_outer) counted += v.size();
    CHECK(counted == b.edges.size());
    // Round trip through build.
    auto again = LatticeDomain::build(a.points());
    CHECK(again.points() == a.points());
    CHECK(oracle::euler_characteristic(a.points()) == 1);
  }
}

TEST_CASE("removing an inner-boundary point keeps the origin component simply connected") {
  Rng rng(99);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto a = random_domain(60 + 5 * seed, seed);
    std::vector<LatticePoint> candidates;
    for (auto p : a.boundary().inner)
      if (p != LatticePoint{0, 0}) candidates.push_back(p);
    const auto x = candidates[std::size_t(rng.below(candidates.size()))];
    auto b = remove_and_keep_origin_component(a, x);
    CHECK_FALSE(b.contains(x));
    CHECK(b.origin_included());
    CHECK(oracle::euler_characteristic(b.points()) == 1);
  }
}

TEST_CASE("domain file round trip and parse errors") {
  auto d = lattice_disk(3);
  std::stringstream ss;
  ss << "# disk\n";
  write_domain(ss, d);
  ss << "\n  # trailing comment\n";
  auto pts = parse_domain_text(ss);
  CHECK(LatticeDomain::build(pts).points() == d.points());

  std::istringstream bad("0 0\n1 x\n");
  CHECK_THROWS_AS(parse_domain_text(bad), Error);
}

TEST_CASE("snap_to_boundary picks the nearest polar angle") {
  auto d = lattice_disk(8);
  CHECK(snap_to_boundary(d, 0.0) == LatticePoint{9, 0});
  CHECK(snap_to_boundary(d, std::numbers::pi) == LatticePoint{-9, 0});
  CHECK(snap_to_boundary(d, std::numbers::pi / 2) == LatticePoint{0, 9});
}
