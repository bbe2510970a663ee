#include "mtm/random.hpp"

#include <cmath>

namespace mtm {

double GaussianSampler::uniform01() {
  // Top 53 bits, shifted into (0, 1] so the log below never sees zero.
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double GaussianSampler::next(double sd) {
  if (sd == 0.0) {
    return 0.0;
  }
  if (has_spare_) {
    has_spare_ = false;
    return spare_ * sd;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle) * sd;
}

std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined value; decorrelates per-machine
  // streams even for adjacent indices.
  std::uint64_t z = campaign_seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace mtm
