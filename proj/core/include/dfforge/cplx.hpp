#pragma once

// A minimal complex type over an arbitrary real scalar T (double or Taylor), so that the
// same formula can be evaluated pointwise and as a local jet.

#include <cmath>
#include <complex>

#include "dfforge/taylor.hpp"

namespace dfforge {

using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

template <class T>
struct Cplx {
  T re;
  T im;

  Cplx() : re(), im() {}
  Cplx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx operator-() const { return {-re, -im}; }
};

template <class T>
Cplx<T> operator+(Cplx<T> a, const Cplx<T>& b) {
  return a += b;
}
template <class T>
Cplx<T> operator-(Cplx<T> a, const Cplx<T>& b) {
  return a -= b;
}
template <class T>
Cplx<T> operator*(const Cplx<T>& a, const Cplx<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
Cplx<T> operator*(const Cplx<T>& a, const T& s) {
  return {a.re * s, a.im * s};
}
template <class T>
Cplx<T> operator*(const T& s, const Cplx<T>& a) {
  return {a.re * s, a.im * s};
}
template <class T>
Cplx<T> operator*(const Cplx<T>& a, std::complex<double> c) {
  return {a.re * c.real() - a.im * c.imag(), a.re * c.imag() + a.im * c.real()};
}
template <class T>
Cplx<T> operator*(std::complex<double> c, const Cplx<T>& a) {
  return a * c;
}
template <class T>
  requires(!std::is_same_v<T, double>)
Cplx<T> operator*(const Cplx<T>& a, double s) {
  return {a.re * s, a.im * s};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Cplx<T> operator*(double s, const Cplx<T>& a) {
  return {a.re * s, a.im * s};
}
template <class T>
Cplx<T> operator+(Cplx<T> a, std::complex<double> c) {
  a.re += c.real();
  a.im += c.imag();
  return a;
}
template <class T>
Cplx<T> operator-(Cplx<T> a, std::complex<double> c) {
  a.re -= c.real();
  a.im -= c.imag();
  return a;
}

template <class T>
Cplx<T> conj(const Cplx<T>& a) {
  return {a.re, -a.im};
}
/// |a|^2
template <class T>
T abs2(const Cplx<T>& a) {
  return a.re * a.re + a.im * a.im;
}
template <class T>
Cplx<T> operator/(const Cplx<T>& a, const T& s) {
  return {a.re / s, a.im / s};
}
template <class T>
Cplx<T> operator/(const Cplx<T>& a, const Cplx<T>& b) {
  T d = abs2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class T>
Cplx<T> cexp(const Cplx<T>& a) {
  T m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}

template <class T>
Cplx<T> constant_like(const T& like, std::complex<double> c);

template <>
inline Cplx<double> constant_like(const double&, std::complex<double> c) {
  return {c.real(), c.imag()};
}
template <>
inline Cplx<Taylor> constant_like(const Taylor& like, std::complex<double> c) {
  return {Taylor(like.nvars(), like.order(), c.real()), Taylor(like.nvars(), like.order(), c.imag())};
}

inline std::complex<double> to_std(const Cplx<double>& a) { return {a.re, a.im}; }
inline std::complex<double> value_of(const Cplx<Taylor>& a) { return {a.re.constant(), a.im.constant()}; }
inline std::complex<double> value_of(const Cplx<double>& a) { return {a.re, a.im}; }

using CTaylor = Cplx<Taylor>;

}  // namespace dfforge
