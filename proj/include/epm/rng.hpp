#pragma once

#include <cstdint>
#include <random>

namespace epm {

// Seeded uniform generator with a fixed bit-to-double mapping, so runs are
// reproducible across standard library implementations.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace epm
