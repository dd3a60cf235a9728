#pragma once

#include <cstdint>

namespace lerwkit {

/// SplitMix64. Streams are derived from (seed, stream index) by mixing, so
/// sample i of a Monte Carlo run depends only on the seed and i. This
/// algorithm is part of the reproducibility contract; changing it changes
/// every sampled artifact.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t state) noexcept : state_(state) {}

  static constexpr Rng stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return Rng(mix(mix(seed) ^ (index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull)));
  }

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Uniform in {0,1,2,3}.
  constexpr int direction() noexcept { return int(next() >> 62); }

  /// Uniform in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

  /// Uniform in [0, 1).
  double uniform() noexcept { return double(next() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace lerwkit
