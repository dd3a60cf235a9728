#include "lerwkit/potential.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "lerwkit/error.hpp"

namespace lerwkit {

namespace {

constexpr int kCutoff = 50;

// a(x, y) for 0 <= y <= x <= kCutoff, row x stored at offset x(x+1)/2.
class OctantTable {
 public:
  OctantTable() : values_(std::size_t(kCutoff + 1) * (kCutoff + 2) / 2) {
    using Real = boost::multiprecision::cpp_bin_float_100;
    const Real pi = boost::math::constants::pi<Real>();

    // Two previous columns and the current one, indexed by y.
    std::vector<Real> prev(kCutoff + 2), cur(kCutoff + 2), next(kCutoff + 2);
    Real diag = 0;  // a(x, x) = (4/pi) sum_{j<=x} 1/(2j-1)
    cur[0] = 0;
    store(0, 0, cur[0]);
    for (int x = 0; x < kCutoff; ++x) {
      // Column x+1 from harmonicity at (x, y), using a(x, -1) = a(x, 1).
      if (x == 0) {
        next[0] = 1;
      } else {
        for (int y = 0; y < x; ++y) {
          const Real& below = y == 0 ? cur[1] : cur[y - 1];
          next[y] = 4 * cur[y] - prev[y] - cur[y + 1] - below;
        }
        // Harmonicity at (x, x) with reflection symmetry.
        next[x] = 2 * cur[x] - cur[x - 1];
      }
      diag += Real(4) / (pi * (2 * (x + 1) - 1));
      next[x + 1] = diag;
      for (int y = 0; y <= x + 1; ++y) store(x + 1, y, next[y]);
      std::swap(prev, cur);
      std::swap(cur, next);
    }
  }

  double operator()(int x, int y) const { return values_[std::size_t(x) * (x + 1) / 2 + std::size_t(y)]; }

 private:
  template <class Real>
  void store(int x, int y, const Real& v) {
    values_[std::size_t(x) * (x + 1) / 2 + std::size_t(y)] = static_cast<double>(v);
  }
  std::vector<double> values_;
};

const OctantTable& table() {
  static const OctantTable t;
  return t;
}

}  // namespace

const PotentialConstants& potential_constants() noexcept {
  static const PotentialConstants c{
      std::numbers::egamma,
      (2 * std::numbers::egamma + 3 * std::numbers::ln2) / std::numbers::pi,
      kCutoff,
  };
  return c;
}

bool potential_is_exact(LatticePoint p) noexcept { return std::max(std::abs(p.x), std::abs(p.y)) <= kCutoff; }

double potential_a(LatticePoint p) {
  int x = std::abs(p.x), y = std::abs(p.y);
  if (x < y) std::swap(x, y);
  if (x <= kCutoff) return table()(x, y);
  return (2 / std::numbers::pi) * std::log(norm(p)) + potential_constants().k0;
}

double k_x(LatticePoint p) {
  if (p == LatticePoint{0, 0}) throw Error(ErrorCode::ZeroPoint, "k_x is undefined at the origin");
  return potential_constants().k0 + (2 / std::numbers::pi) * std::log(norm(p)) - potential_a(p);
}

}  // namespace lerwkit
