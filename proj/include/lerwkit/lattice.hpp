#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lerwkit {

struct LatticePoint {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend constexpr LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
};

/// Unit steps in the order east, north, west, south.
inline constexpr std::array<LatticePoint, 4> kSteps{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

double norm(LatticePoint p) noexcept;
std::int64_t norm2(LatticePoint p) noexcept;
bool adjacent(LatticePoint a, LatticePoint b) noexcept;

struct LatticePointHash {
  std::size_t operator()(LatticePoint p) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t(std::uint32_t(p.x)) << 32) | std::uint32_t(p.y));
  }
};

std::ostream& operator<<(std::ostream& os, LatticePoint p);

/// Inclusive integer rectangle.
struct Box {
  int xmin = 0, ymin = 0, xmax = -1, ymax = -1;

  int width() const noexcept { return xmax - xmin + 1; }
  int height() const noexcept { return ymax - ymin + 1; }
  bool contains(LatticePoint p) const noexcept {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  Box inflated(int r) const noexcept { return {xmin - r, ymin - r, xmax + r, ymax + r}; }
};

/// An element (inside, outside) of the edge boundary. The dual unit segment
/// of the union-of-squares polygon crosses it at its midpoint.
struct BoundaryEdge {
  LatticePoint inside;
  LatticePoint outside;

  friend constexpr bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

struct BoundaryData {
  std::vector<LatticePoint> outer;  // sorted
  std::vector<LatticePoint> inner;  // sorted
  /// The edge boundary listed in counterclockwise order along the polygon,
  /// interior on the left. Starts at the edge whose outer point is
  /// lexicographically smallest (ties broken by the inner point).
  std::vector<BoundaryEdge> edges;
  /// For each outer point (same order as `outer`), the positions of its
  /// edges in `edges`, ascending.
  std::vector<std::vector<int>> edges_of_outer;
};

/// Finite simply connected subset of Z^2. Immutable after construction.
class LatticeDomain {
 public:
  /// Validates connectivity of the points and of their complement.
  /// Duplicate input points are ignored.
  static LatticeDomain build(std::span<const LatticePoint> points);

  std::size_t size() const noexcept { return points_.size(); }
  /// Sorted lexicographically; the position of a point is its index.
  const std::vector<LatticePoint>& points() const noexcept { return points_; }
  const Box& bounding_box() const noexcept { return box_; }
  bool origin_included() const noexcept { return origin_included_; }

  bool contains(LatticePoint p) const noexcept { return index_of(p) >= 0; }
  /// -1 when p is not in the domain.
  int index_of(LatticePoint p) const noexcept {
    if (!grid_box_.contains(p)) return -1;
    return index_grid_[cell(p)];
  }
  bool on_boundary(LatticePoint p) const noexcept { return outer_index(p) >= 0; }
  /// Position of p in boundary().outer, or -1.
  int outer_index(LatticePoint p) const noexcept {
    if (!grid_box_.contains(p)) return -1;
    return outer_grid_[cell(p)];
  }

  const BoundaryData& boundary() const noexcept { return boundary_; }

  /// Distance from the origin to the nearest excluded lattice point.
  double inradius_exact() const;
  /// Distance from the origin to the farthest included lattice point.
  double radius_exact() const;
  /// Floors of the above.
  int inradius() const;
  int radius() const;

 private:
  LatticeDomain() = default;
  std::size_t cell(LatticePoint p) const noexcept {
    return std::size_t(p.y - grid_box_.ymin) * std::size_t(grid_box_.width()) + std::size_t(p.x - grid_box_.xmin);
  }
  void build_boundary();

  std::vector<LatticePoint> points_;
  Box box_;
  Box grid_box_;  // box_ inflated by one ring
  std::vector<std::int32_t> index_grid_;
  std::vector<std::int32_t> outer_grid_;
  bool origin_included_ = false;
  BoundaryData boundary_;
};

inline const BoundaryData& boundary(const LatticeDomain& a) { return a.boundary(); }

// Standard families.
LatticeDomain lattice_disk(int n);    // {z : |z| <= n}
LatticeDomain lattice_square(int n);  // {z : max(|x|,|y|) <= n}
LatticeDomain plus_shape();           // origin and its four neighbours
/// Eden growth from the origin to `size` points followed by hole filling.
LatticeDomain random_domain(std::size_t size, std::uint64_t seed);

/// Component of A \ {removed} containing the origin.
LatticeDomain remove_and_keep_origin_component(const LatticeDomain& a, LatticePoint removed);

/// Polar angle of p in [0, 2pi).
double polar_angle(LatticePoint p) noexcept;

/// Outer boundary point whose polar angle is closest to `angle`; ties go to
/// the point nearest the origin, then lexicographic order.
LatticePoint snap_to_boundary(const LatticeDomain& a, double angle);

// Domain file format: one "x y" pair per line, '#' starts a comment.
std::vector<LatticePoint> parse_domain_text(std::istream& in);
LatticeDomain read_domain_file(const std::string& path);
void write_domain(std::ostream& out, const LatticeDomain& a);

}  // namespace lerwkit
