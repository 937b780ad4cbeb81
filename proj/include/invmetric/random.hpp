#pragma once

// Seeded generator whose draws do not depend on the standard library's
// distribution implementations, so reports are reproducible across toolchains.

#include <cmath>
#include <cstdint>
#include <random>

#include "invmetric/complex.hpp"

namespace invmetric {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform by area in the closed-below disc of the given radius.
  Complex in_disc(double radius) {
    const double rho = radius * std::sqrt(uniform());
    return std::polar(rho, uniform(0.0, kTwoPi));
  }

  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace invmetric
