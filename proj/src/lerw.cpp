#include "lerwkit/lerw.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lerwkit/error.hpp"

namespace lerwkit {

SawPath loop_erase(const WalkPath& path) {
  const auto& s = path.sites;
  if (s.empty()) throw Error(ErrorCode::EmptyPath, "cannot loop-erase an empty path");
  std::unordered_map<LatticePoint, std::size_t, LatticePointHash> last;
  last.reserve(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) last[s[j]] = j;
  SawPath out;
  std::size_t i = last[s[0]];
  out.sites.push_back(s[i]);
  while (i + 1 < s.size()) {
    i = last[s[i + 1]];
    out.sites.push_back(s[i]);
  }
  return out;
}

namespace {

void require_start(const LatticeDomain& a, LatticePoint x) {
  if (!a.on_boundary(x)) throw Error(ErrorCode::NotBoundary, "start point is not on the boundary");
  for (auto e : kSteps)
    if (a.contains(x + e)) return;
  throw Error(ErrorCode::IsolatedBoundaryPoint, "boundary point has no neighbour in the domain");
}

/// Walk from x up to and including the first j > 0 with S_j outside A.
void walk_from_boundary(const LatticeDomain& a, LatticePoint x, Rng& rng, std::vector<LatticePoint>& sites) {
  sites.clear();
  sites.push_back(x);
  LatticePoint p = x;
  do {
    p = p + kSteps[std::size_t(rng.direction())];
    sites.push_back(p);
  } while (a.contains(p));
}

}  // namespace

LerwSample sample_lerw(const LatticeDomain& a, LatticePoint x, Rng& rng) {
  require_start(a, x);
  WalkPath w;
  walk_from_boundary(a, x, rng, w.sites);
  const LatticePoint exit = w.sites.back();
  return {loop_erase(w), exit};
}

LerwSample sample_lerw(const LatticeDomain& a, LatticePoint x, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 0);
  return sample_lerw(a, x, rng);
}

CrossingConfig make_crossing_config(std::shared_ptr<const LatticeDomain> a, std::vector<LatticePoint> xs,
                                    std::vector<LatticePoint> ys) {
  if (!a) throw Error(ErrorCode::BadParameter, "crossing config needs a domain");
  if (xs.empty() || xs.size() != ys.size())
    throw Error(ErrorCode::BadParameter, "xs and ys must be nonempty and of equal length");
  std::vector<LatticePoint> seq(xs);
  seq.insert(seq.end(), ys.rbegin(), ys.rend());
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] == seq[j]) throw Error(ErrorCode::DuplicatePoint, "crossing points must be distinct");
  CrossingConfig cfg{std::move(a), std::move(xs), std::move(ys), {}};
  const auto& b = cfg.domain->boundary();
  for (auto p : seq) {
    require_start(*cfg.domain, p);
    cfg.positions.push_back(b.edges_of_outer[std::size_t(cfg.domain->outer_index(p))].front());
  }
  // Offsets from the first position must increase strictly around the cycle.
  const int n = int(b.edges.size());
  int prev = 0;
  for (std::size_t i = 1; i < cfg.positions.size(); ++i) {
    const int off = ((cfg.positions[i] - cfg.positions[0]) % n + n) % n;
    if (off <= prev) throw Error(ErrorCode::BadOrdering, "points are not in counterclockwise order x^1..x^k, y^k..y^1");
    prev = off;
  }
  return cfg;
}

bool crossing_event_sample(const CrossingConfig& cfg, Rng& rng) {
  const LatticeDomain& a = *cfg.domain;
  // Sites of earlier loop erasures that lie in A; endpoints are boundary
  // points distinct from every later start and target.
  std::vector<char> blocked(a.size(), 0);
  WalkPath w;
  for (std::size_t i = 0; i < cfg.k(); ++i) {
    const LatticePoint x = cfg.xs[i];
    w.sites.clear();
    w.sites.push_back(x);
    LatticePoint p = x + kSteps[std::size_t(rng.direction())];
    int idx = a.index_of(p);
    if (idx < 0) return false;
    for (;;) {
      if (blocked[std::size_t(idx)]) return false;
      w.sites.push_back(p);
      p = p + kSteps[std::size_t(rng.direction())];
      idx = a.index_of(p);
      if (idx < 0) break;
    }
    if (p != cfg.ys[i]) return false;
    if (i + 1 == cfg.k()) return true;
    w.sites.push_back(p);
    for (auto s : loop_erase(w).sites)
      if (int j = a.index_of(s); j >= 0) blocked[std::size_t(j)] = 1;
  }
  return true;
}

namespace {

McEstimate finish(std::uint64_t hits, std::uint64_t samples, std::uint64_t seed) {
  McEstimate r;
  r.samples = samples;
  r.seed = seed;
  r.hits = hits;
  r.estimate = samples ? double(hits) / double(samples) : 0.0;
  r.std_error = samples ? std::sqrt(r.estimate * (1 - r.estimate) / double(samples)) : 0.0;
  return r;
}

void require_samples(std::uint64_t samples) {
  if (samples == 0) throw Error(ErrorCode::BadParameter, "sample count must be at least 1");
}

}  // namespace

McEstimate crossing_probability_mc(const CrossingConfig& cfg, std::uint64_t samples, std::uint64_t seed) {
  require_samples(samples);
  std::uint64_t hits = 0;
  const auto n = std::int64_t(samples);
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, std::uint64_t(i));
    hits += crossing_event_sample(cfg, rng) ? 1 : 0;
  }
  return finish(hits, samples, seed);
}

McEstimate crossing_probability_mc_serial(const CrossingConfig& cfg, std::uint64_t samples, std::uint64_t seed) {
  require_samples(samples);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng = Rng::stream(seed, i);
    hits += crossing_event_sample(cfg, rng) ? 1 : 0;
  }
  return finish(hits, samples, seed);
}

}  // namespace lerwkit
