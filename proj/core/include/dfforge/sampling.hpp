#pragma once

// Deterministic pseudo-random and low-discrepancy sequences.

#include <cstdint>
#include <random>
#include <vector>

#include "dfforge/cpoint.hpp"

namespace dfforge {

/// 64-bit Mersenne twister with an explicit bits-to-double conversion, so sequences are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// Radical inverse of `index` in the given prime base.
double halton(std::uint64_t index, int base);

/// n quasi-uniform points on the unit sphere S^3 of C^2 (Halton in Hopf-type coordinates,
/// randomly rotated by a seed-dependent shift modulo 1).
std::vector<CPoint> sphere_points(std::size_t n, std::uint64_t seed);

/// n points on the unit sphere of C^2 in the (a, b) coordinates used for quadratic-form
/// sampling: a Fibonacci-style deterministic set.
std::vector<CVec2> fibonacci_c2(std::size_t n);

}  // namespace dfforge
