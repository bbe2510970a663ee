#pragma once

#include <cstdint>
#include <random>

namespace mtm {

/// Seeded gaussian stream with a pinned algorithm (mt19937_64 + Box-Muller)
/// so that synthetic campaigns replay bit for bit from their seed.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  /// One draw from N(0, sd). sd == 0 returns 0 without consuming state.
  double next(double sd);

 private:
  double uniform01();  // in (0, 1]

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Per-record seed derived from the campaign seed (splitmix64 mix), stable
/// under campaign reordering.
std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index);

}  // namespace mtm
