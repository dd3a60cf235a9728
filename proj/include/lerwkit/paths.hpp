#pragma once

#include <vector>

#include "lerwkit/lattice.hpp"

namespace lerwkit {

/// Nearest-neighbour lattice path.
struct WalkPath {
  std::vector<LatticePoint> sites;
};

/// Nearest-neighbour path visiting each site at most once.
struct SawPath {
  std::vector<LatticePoint> sites;
};

bool is_nearest_neighbour(const std::vector<LatticePoint>& sites) noexcept;
bool is_self_avoiding(const std::vector<LatticePoint>& sites);

}  // namespace lerwkit
