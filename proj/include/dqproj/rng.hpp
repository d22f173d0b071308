#pragma once

// Portable random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the C++ standard; the transforms below are spelled out here so
// that draws do not depend on a standard library's distribution classes.
//
//   uniform01     (u64 >> 11) * 2^-53, in [0, 1)
//   uniform(a,b)  a + (b - a) * uniform01
//   normal        Box-Muller on (1 - uniform01, uniform01); the sine branch is
//                 cached and returned by the next call
//   index(n)      rejection sampling on the top bits, uniform in [0, n)

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dqproj {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t index(std::uint64_t n) {
    if (n <= 1) return 0;
    // Smallest all-ones mask covering n - 1.
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const std::uint64_t v = engine_() & mask;
      if (v < n) return v;
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Per-item seed derivation (splitmix64 finalizer) so batch items get
/// independent streams regardless of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t item) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (item + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace dqproj
