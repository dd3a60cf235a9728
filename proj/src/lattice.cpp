#include "lerwkit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lerwkit/error.hpp"
#include "lerwkit/rng.hpp"

namespace lerwkit {

double norm(LatticePoint p) noexcept { return std::hypot(double(p.x), double(p.y)); }

std::int64_t norm2(LatticePoint p) noexcept {
  return std::int64_t(p.x) * p.x + std::int64_t(p.y) * p.y;
}

bool adjacent(LatticePoint a, LatticePoint b) noexcept {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1;
}

std::ostream& operator<<(std::ostream& os, LatticePoint p) { return os << '(' << p.x << ',' << p.y << ')'; }

double polar_angle(LatticePoint p) noexcept {
  double a = std::atan2(double(p.y), double(p.x));
  return a < 0 ? a + 2 * std::numbers::pi : a;
}

namespace {

// Flood fill over a dense grid; marks reached cells with `mark`.
std::size_t flood(std::vector<std::int8_t>& grid, int w, int h, std::size_t start, std::int8_t from,
                  std::int8_t mark) {
  std::vector<std::size_t> stack{start};
  grid[start] = mark;
  std::size_t count = 0;
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    ++count;
    const int cx = int(c % std::size_t(w));
    const int cy = int(c / std::size_t(w));
    for (auto s : kSteps) {
      const int nx = cx + s.x, ny = cy + s.y;
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const std::size_t n = std::size_t(ny) * std::size_t(w) + std::size_t(nx);
      if (grid[n] == from) {
        grid[n] = mark;
        stack.push_back(n);
      }
    }
  }
  return count;
}

}  // namespace

LatticeDomain LatticeDomain::build(std::span<const LatticePoint> input) {
  if (input.empty()) throw Error(ErrorCode::Empty, "domain has no points");

  LatticeDomain d;
  d.points_.assign(input.begin(), input.end());
  std::sort(d.points_.begin(), d.points_.end());
  d.points_.erase(std::unique(d.points_.begin(), d.points_.end()), d.points_.end());

  Box box{d.points_[0].x, d.points_[0].y, d.points_[0].x, d.points_[0].y};
  for (auto p : d.points_) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  d.box_ = box;
  d.grid_box_ = box.inflated(1);
  const int w = d.grid_box_.width(), h = d.grid_box_.height();
  d.index_grid_.assign(std::size_t(w) * std::size_t(h), -1);
  for (std::size_t i = 0; i < d.points_.size(); ++i) d.index_grid_[d.cell(d.points_[i])] = std::int32_t(i);

  // 0 = outside, 1 = inside; reached cells become 2.
  std::vector<std::int8_t> occ(d.index_grid_.size());
  for (std::size_t c = 0; c < occ.size(); ++c) occ[c] = d.index_grid_[c] >= 0 ? 1 : 0;

  if (flood(occ, w, h, d.cell(d.points_[0]), 1, 2) != d.points_.size())
    throw Error(ErrorCode::NotConnected, "points are not nearest-neighbour connected");
  // The inflated ring is entirely outside and connects everything beyond it.
  const std::size_t outside = occ.size() - d.points_.size();
  if (flood(occ, w, h, 0, 0, 3) != outside)
    throw Error(ErrorCode::NotSimplyConnected, "complement has a bounded component (hole)");

  d.origin_included_ = d.contains({0, 0});
  d.build_boundary();
  return d;
}

void LatticeDomain::build_boundary() {
  auto& b = boundary_;
  std::vector<BoundaryEdge> edges;
  std::set<LatticePoint> outer, inner;
  for (auto p : points_) {
    for (auto s : kSteps) {
      const LatticePoint q = p + s;
      if (!contains(q)) {
        edges.push_back({p, q});
        outer.insert(q);
        inner.insert(p);
      }
    }
  }
  b.outer.assign(outer.begin(), outer.end());
  b.inner.assign(inner.begin(), inner.end());
  outer_grid_.assign(index_grid_.size(), -1);
  for (std::size_t i = 0; i < b.outer.size(); ++i) outer_grid_[cell(b.outer[i])] = std::int32_t(i);

  // Each edge is dual to a unit segment. In doubled coordinates the segment
  // runs from (x+y) - t to (x+y) + t where t is the edge direction turned
  // counterclockwise, which keeps the inside square on the left.
  auto key = [](LatticePoint p2) { return (std::uint64_t(std::uint32_t(p2.x)) << 32) | std::uint32_t(p2.y); };
  std::unordered_map<std::uint64_t, std::size_t> by_start;
  by_start.reserve(edges.size() * 2);
  auto segment = [](const BoundaryEdge& e) {
    const LatticePoint d = e.outside - e.inside;
    const LatticePoint t{-d.y, d.x};
    const LatticePoint mid2 = e.inside + e.outside;
    return std::pair{mid2 - t, mid2 + t};
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [start, end] = segment(edges[i]);
    if (!by_start.emplace(key(start), i).second)
      throw Error(ErrorCode::NotSimplyConnected, "boundary polygon is not a simple closed curve");
  }

  std::size_t anchor = 0;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const auto& a = edges[anchor];
    if (e.outside < a.outside || (e.outside == a.outside && e.inside < a.inside)) anchor = i;
  }

  b.edges.clear();
  b.edges.reserve(edges.size());
  std::size_t cur = anchor;
  do {
    b.edges.push_back(edges[cur]);
    auto it = by_start.find(key(segment(edges[cur]).second));
    if (it == by_start.end())
      throw Error(ErrorCode::NotSimplyConnected, "boundary polygon is not closed");
    cur = it->second;
  } while (cur != anchor && b.edges.size() <= edges.size());
  if (b.edges.size() != edges.size())
    throw Error(ErrorCode::NotSimplyConnected, "boundary polygon has more than one component");

  b.edges_of_outer.assign(b.outer.size(), {});
  for (std::size_t i = 0; i < b.edges.size(); ++i)
    b.edges_of_outer[std::size_t(outer_index(b.edges[i].outside))].push_back(int(i));
}

double LatticeDomain::inradius_exact() const {
  if (!origin_included_) throw Error(ErrorCode::OriginMissing, "inradius needs the origin in the domain");
  // The nearest excluded point always neighbours the domain.
  std::int64_t best = -1;
  for (auto p : boundary_.outer)
    if (best < 0 || norm2(p) < best) best = norm2(p);
  return std::sqrt(double(best));
}

double LatticeDomain::radius_exact() const {
  if (!origin_included_) throw Error(ErrorCode::OriginMissing, "radius needs the origin in the domain");
  std::int64_t best = 0;
  for (auto p : boundary_.inner) best = std::max(best, norm2(p));
  return std::sqrt(double(best));
}

int LatticeDomain::inradius() const { return int(std::floor(inradius_exact() + 1e-12)); }
int LatticeDomain::radius() const { return int(std::floor(radius_exact() + 1e-12)); }

LatticeDomain lattice_disk(int n) {
  if (n < 1) throw Error(ErrorCode::BadParameter, "disk radius must be >= 1");
  std::vector<LatticePoint> pts;
  const std::int64_t r2 = std::int64_t(n) * n;
  for (int y = -n; y <= n; ++y)
    for (int x = -n; x <= n; ++x)
      if (norm2({x, y}) <= r2) pts.push_back({x, y});
  return LatticeDomain::build(pts);
}

LatticeDomain lattice_square(int n) {
  if (n < 0) throw Error(ErrorCode::BadParameter, "square half-width must be >= 0");
  std::vector<LatticePoint> pts;
  for (int y = -n; y <= n; ++y)
    for (int x = -n; x <= n; ++x) pts.push_back({x, y});
  return LatticeDomain::build(pts);
}

LatticeDomain plus_shape() {
  const std::vector<LatticePoint> pts{{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return LatticeDomain::build(pts);
}

LatticeDomain random_domain(std::size_t size, std::uint64_t seed) {
  if (size == 0) throw Error(ErrorCode::BadParameter, "random domain size must be positive");
  Rng rng = Rng::stream(seed, 0);
  std::unordered_set<LatticePoint, LatticePointHash> in{{0, 0}};
  std::vector<LatticePoint> pts{{0, 0}};
  // Frontier with duplicates; sampling from it weights sites by exposed edges.
  std::vector<LatticePoint> frontier(kSteps.begin(), kSteps.end());
  while (pts.size() < size) {
    const std::size_t i = std::size_t(rng.below(frontier.size()));
    const LatticePoint p = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    if (in.count(p)) continue;
    in.insert(p);
    pts.push_back(p);
    for (auto s : kSteps)
      if (!in.count(p + s)) frontier.push_back(p + s);
  }

  // Fill holes: every complement cell not reachable from the outer ring joins.
  Box box{0, 0, 0, 0};
  for (auto p : pts) {
    box.xmin = std::min(box.xmin, p.x);
    box.xmax = std::max(box.xmax, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.ymax = std::max(box.ymax, p.y);
  }
  box = box.inflated(1);
  const int w = box.width(), h = box.height();
  std::vector<std::int8_t> occ(std::size_t(w) * std::size_t(h), 0);
  auto cell = [&](LatticePoint p) { return std::size_t(p.y - box.ymin) * std::size_t(w) + std::size_t(p.x - box.xmin); };
  for (auto p : pts) occ[cell(p)] = 1;
  flood(occ, w, h, 0, 0, 3);
  for (int y = box.ymin; y <= box.ymax; ++y)
    for (int x = box.xmin; x <= box.xmax; ++x)
      if (occ[cell({x, y})] == 0) pts.push_back({x, y});
  return LatticeDomain::build(pts);
}

LatticeDomain remove_and_keep_origin_component(const LatticeDomain& a, LatticePoint removed) {
  if (!a.origin_included()) throw Error(ErrorCode::OriginMissing, "domain must contain the origin");
  if (removed == LatticePoint{0, 0}) throw Error(ErrorCode::ZeroPoint, "cannot remove the origin");
  std::unordered_set<LatticePoint, LatticePointHash> seen{{0, 0}};
  std::vector<LatticePoint> stack{{0, 0}}, comp;
  while (!stack.empty()) {
    const LatticePoint p = stack.back();
    stack.pop_back();
    comp.push_back(p);
    for (auto s : kSteps) {
      const LatticePoint q = p + s;
      if (q != removed && a.contains(q) && seen.insert(q).second) stack.push_back(q);
    }
  }
  return LatticeDomain::build(comp);
}

LatticePoint snap_to_boundary(const LatticeDomain& a, double angle) {
  const double two_pi = 2 * std::numbers::pi;
  angle = std::fmod(angle, two_pi);
  if (angle < 0) angle += two_pi;
  const auto& outer = a.boundary().outer;
  LatticePoint best = outer.front();
  double best_gap = 1e300;
  for (auto p : outer) {
    double gap = std::abs(polar_angle(p) - angle);
    gap = std::min(gap, two_pi - gap);
    const bool better = gap < best_gap - 1e-12 ||
                        (std::abs(gap - best_gap) <= 1e-12 && (norm2(p) < norm2(best) ||
                                                               (norm2(p) == norm2(best) && p < best)));
    if (better) {
      best = p;
      best_gap = gap;
    }
  }
  return best;
}

std::vector<LatticePoint> parse_domain_text(std::istream& in) {
  std::vector<LatticePoint> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    LatticePoint p;
    if (!(ls >> p.x)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'x y'");
    }
    std::string rest;
    if (!(ls >> p.y) || (ls >> rest))
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'x y'");
    pts.push_back(p);
  }
  return pts;
}

LatticeDomain read_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open domain file " + path);
  const auto pts = parse_domain_text(in);
  return LatticeDomain::build(pts);
}

void write_domain(std::ostream& out, const LatticeDomain& a) {
  for (auto p : a.points()) out << p.x << ' ' << p.y << '\n';
}

}  // namespace lerwkit
