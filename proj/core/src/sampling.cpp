#include "dfforge/sampling.hpp"

#include <cmath>
#include <numbers>

namespace dfforge {

double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  const auto b = static_cast<std::uint64_t>(base);
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % b);
    index /= b;
  }
  return r;
}

std::vector<CPoint> sphere_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const double shift[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
  std::vector<CPoint> out;
  out.reserve(n);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::uint64_t>(i + 1);
    double a = std::fmod(halton(k, 2) + shift[0], 1.0);
    double b = std::fmod(halton(k, 3) + shift[1], 1.0);
    double c = std::fmod(halton(k, 5) + shift[2], 1.0);
    // |w|^2 uniform on [0, 1] gives the uniform measure on S^3.
    const double rz = std::sqrt(1.0 - a), rw = std::sqrt(a);
    out.emplace_back(std::polar(rz, two_pi * b), std::polar(rw, two_pi * c));
  }
  return out;
}

std::vector<CVec2> fibonacci_c2(std::size_t n) {
  std::vector<CVec2> out;
  out.reserve(n);
  const double phi1 = (std::sqrt(5.0) - 1.0) / 2.0;
  const double phi2 = std::sqrt(2.0) - 1.0;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double ra = std::sqrt(1.0 - t), rb = std::sqrt(t);
    const double a1 = two_pi * std::fmod(static_cast<double>(i) * phi1, 1.0);
    const double a2 = two_pi * std::fmod(static_cast<double>(i) * phi2, 1.0);
    out.push_back({std::polar(ra, a1), std::polar(rb, a2)});
  }
  return out;
}

}  // namespace dfforge
