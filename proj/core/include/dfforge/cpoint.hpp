#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "dfforge/errors.hpp"

namespace dfforge {

using cd = std::complex<double>;

/// Real chart of C^2: (x, y, u, v) with z = x + iy, w = u + iv.
using Vec4 = std::array<double, 4>;

/// A point of C^2.
struct CPoint {
  cd z{};
  cd w{};

  CPoint() = default;
  CPoint(cd z_, cd w_) : z(z_), w(w_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(w.real()) ||
        !std::isfinite(w.imag()))
      throw DomainError("non-finite coordinate in CPoint");
  }

  static CPoint from_real(const Vec4& r) { return {cd(r[0], r[1]), cd(r[2], r[3])}; }
  Vec4 real() const { return {z.real(), z.imag(), w.real(), w.imag()}; }

  double norm() const { return std::sqrt(std::norm(z) + std::norm(w)); }

  friend bool operator==(const CPoint& a, const CPoint& b) { return a.z == b.z && a.w == b.w; }
};

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }
inline double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }
inline double distance(const CPoint& a, const CPoint& b) { return norm(a.real() - b.real()); }

/// Coefficients (a, b) of a holomorphic vector a d/dz + b d/dw.
using CVec2 = std::array<cd, 2>;

inline cd hermitian_dot(const CVec2& a, const CVec2& b) {
  return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]);
}
inline double cnorm(const CVec2& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1])); }

}  // namespace dfforge
