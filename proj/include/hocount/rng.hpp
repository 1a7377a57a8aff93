#pragma once

#include <cstdint>
#include <random>

namespace hocount {

/// splitmix64 finalizer; a bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x);

/// Stream seed for (master, a, b). Used to give every (grid point, trial) pair
/// its own generator so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Seeded generator with platform-stable variates.
///
/// std::*_distribution output is implementation-defined, so all variates used
/// by the simulators are produced here from raw mt19937_64 words.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return engine_(); }

  /// Poisson variate: CDF inversion below mean 30, PTRS transformed
  /// rejection (Hormann 1993) above.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hocount
