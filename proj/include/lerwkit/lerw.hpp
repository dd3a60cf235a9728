#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lerwkit/lattice.hpp"
#include "lerwkit/paths.hpp"
#include "lerwkit/rng.hpp"

namespace lerwkit {

/// Chronological loop erasure: s_0 is the last visit to S_0 and s_i the last
/// visit to S_{s_{i-1}+1}; the result is [S_{s_0}, ..., S_{s_n}] with s_n = m.
SawPath loop_erase(const WalkPath& path);

struct LerwSample {
  SawPath path;
  LatticePoint exit;
};

/// Walk from the boundary point x until the first j > 0 with S_j outside A,
/// then loop-erase. The first step may leave A at once.
LerwSample sample_lerw(const LatticeDomain& a, LatticePoint x, Rng& rng);
LerwSample sample_lerw(const LatticeDomain& a, LatticePoint x, std::uint64_t seed);

/// Boundary points x^1..x^k and y^1..y^k such that x^1..x^k, y^k..y^1 run
/// counterclockwise along the boundary cycle.
struct CrossingConfig {
  std::shared_ptr<const LatticeDomain> domain;
  std::vector<LatticePoint> xs;
  std::vector<LatticePoint> ys;
  /// Ordering certificate: first ccw-cycle position of each of
  /// x^1..x^k, y^k..y^1, in that order.
  std::vector<int> positions;

  std::size_t k() const noexcept { return xs.size(); }
};

/// Validates the points (on the boundary, distinct, ccw order, each with a
/// neighbour in A) and fills the certificate.
CrossingConfig make_crossing_config(std::shared_ptr<const LatticeDomain> a, std::vector<LatticePoint> xs,
                                    std::vector<LatticePoint> ys);

/// One draw of the event that walk i from x^i steps into A, leaves A at
/// y^i, and never meets the loop erasures of walks 1..i-1.
bool crossing_event_sample(const CrossingConfig& cfg, Rng& rng);

struct McEstimate {
  double estimate = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;
};

/// Sample i uses Rng::stream(seed, i), so the estimate is independent of how
/// the samples are split across threads.
McEstimate crossing_probability_mc(const CrossingConfig& cfg, std::uint64_t samples, std::uint64_t seed);
/// Serial reference for crossing_probability_mc; identical results.
McEstimate crossing_probability_mc_serial(const CrossingConfig& cfg, std::uint64_t samples, std::uint64_t seed);

}  // namespace lerwkit
