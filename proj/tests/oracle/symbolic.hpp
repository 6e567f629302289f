#pragma once

// Hand-symbolic differentiation used as the reference for the jet engine. Expressions are
// finite sums of P e^Q with P, Q polynomials in (z, zb, w, wb); Wirtinger derivatives act on
// monomials exactly and the exponential by the product rule. Nothing here touches the
// library's Taylor arithmetic.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
/// Exponents of z, zb, w, wb.
using Mono = std::array<int, 4>;
/// Variable indices: 0 z, 1 zb, 2 w, 3 wb.
enum Var { Z = 0, ZB = 1, W = 2, WB = 3 };

struct Poly {
  std::map<Mono, cd> terms;

  static Poly constant(cd c) { return Poly{{{Mono{0, 0, 0, 0}, c}}}; }
  static Poly mono(cd c, int a, int b, int d, int e) { return Poly{{{Mono{a, b, d, e}, c}}}; }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms) r.terms[m] += c;
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r;
    for (const auto& [m1, c1] : terms)
      for (const auto& [m2, c2] : o.terms)
        r.terms[{m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]}] += c1 * c2;
    return r;
  }
  Poly scaled(cd s) const {
    Poly r = *this;
    for (auto& [m, c] : r.terms) c *= s;
    return r;
  }
  Poly d(Var v) const {
    Poly r;
    for (const auto& [m, c] : terms) {
      if (m[v] == 0) continue;
      Mono n = m;
      --n[v];
      r.terms[n] += c * static_cast<double>(m[v]);
    }
    return r;
  }
  cd eval(cd z, cd w) const {
    const std::array<cd, 4> x{z, std::conj(z), w, std::conj(w)};
    cd s = 0.0;
    for (const auto& [m, c] : terms) {
      cd t = c;
      for (int k = 0; k < 4; ++k)
        for (int e = 0; e < m[k]; ++e) t *= x[k];
      s += t;
    }
    return s;
  }
};

/// sum_i P_i e^{Q_i}
struct Expr {
  std::vector<std::pair<Poly, Poly>> terms;

  static Expr poly(Poly p) { return Expr{{{std::move(p), Poly{}}}}; }
  static Expr exp_times(Poly p, Poly q) { return Expr{{{std::move(p), std::move(q)}}}; }

  Expr operator+(const Expr& o) const {
    Expr r = *this;
    r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
    return r;
  }
  Expr d(Var v) const {
    Expr r;
    for (const auto& [p, q] : terms) r.terms.emplace_back(p.d(v) + p * q.d(v), q);
    return r;
  }
  cd eval(cd z, cd w) const {
    cd s = 0.0;
    for (const auto& [p, q] : terms) s += p.eval(z, w) * std::exp(q.eval(z, w));
    return s;
  }
};

/// Reference values of the second-order Wirtinger jet and selected third derivatives.
struct RefJet {
  double val = 0.0;
  cd dz, dw, dzzb, dzwb, dwzb, dwwb, dzz, dzw, dww;
};

inline RefJet ref_jet(const Expr& f, cd z, cd w) {
  const Expr fz = f.d(Z), fw = f.d(W);
  return {f.eval(z, w).real(),       fz.eval(z, w),        fw.eval(z, w),
          fz.d(ZB).eval(z, w),       fz.d(WB).eval(z, w),  fw.d(ZB).eval(z, w),
          fw.d(WB).eval(z, w),       fz.d(Z).eval(z, w),   fz.d(W).eval(z, w),
          fw.d(W).eval(z, w)};
}

inline cd ref_third(const Expr& f, const std::array<Var, 3>& dirs, cd z, cd w) {
  return f.d(dirs[0]).d(dirs[1]).d(dirs[2]).eval(z, w);
}

// Convenience constructors.
inline Poly z() { return Poly::mono(1.0, 1, 0, 0, 0); }
inline Poly zb() { return Poly::mono(1.0, 0, 1, 0, 0); }
inline Poly w() { return Poly::mono(1.0, 0, 0, 1, 0); }
inline Poly wb() { return Poly::mono(1.0, 0, 0, 0, 1); }
inline Poly c(cd v) { return Poly::constant(v); }

/// The exponentially flat field a|z|^2 + 2 e^{-1/|w|^2} - b, by hand. With s = |w|^2 and
/// E(s) = e^{-1/s}: E' = E/s^2, E'' = E (s^-4 - 2 s^-3), E''' = E (s^-6 - 6 s^-5 + 6 s^-4).
struct ExpFlatRef {
  double a = 1.0, b = 1.0;

  RefJet jet(cd z, cd w) const {
    const double s = std::norm(w);
    const double E = std::exp(-1.0 / s);
    const double E1 = E / (s * s);
    const double E2 = E * (1.0 / (s * s * s * s) - 2.0 / (s * s * s));
    RefJet j;
    j.val = a * std::norm(z) + 2.0 * E - b;
    j.dz = a * std::conj(z);
    j.dw = 2.0 * E1 * std::conj(w);
    j.dzzb = a;
    j.dzwb = 0.0;
    j.dwzb = 0.0;
    j.dwwb = 2.0 * (E2 * s + E1);
    j.dzz = 0.0;
    j.dzw = 0.0;
    j.dww = 2.0 * E2 * std::conj(w) * std::conj(w);
    return j;
  }
  /// f_{w w wb} = 2 E''' s wb + 4 E'' wb
  cd d_w_w_wb(cd w) const {
    const double s = std::norm(w);
    const double E = std::exp(-1.0 / s);
    const double E2 = E * (std::pow(s, -4) - 2.0 * std::pow(s, -3));
    const double E3 = E * (std::pow(s, -6) - 6.0 * std::pow(s, -5) + 6.0 * std::pow(s, -4));
    return 2.0 * E3 * s * std::conj(w) + 4.0 * E2 * std::conj(w);
  }
  /// f_{w wb wb} = conj(f_{wb w w}) = conj of the above with roles swapped
  cd d_w_wb_wb(cd w) const { return std::conj(d_w_w_wb(w)); }
};

}  // namespace oracle
