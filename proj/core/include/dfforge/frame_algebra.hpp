#pragma once

// Frame algebra shared by pointwise evaluation (T = double) and jet evaluation
// (T = Taylor). With T = Taylor every quantity below is itself a local expansion, so
// derivatives of frame quantities (L_r of a Hessian entry, Hessians of weights built from
// Hessians) come out of the same formulas.

#include "dfforge/cdiff.hpp"
#include "dfforge/cplx.hpp"

namespace dfforge {

/// First and mixed second Wirtinger derivatives of a real function.
template <class T>
struct WData {
  Cplx<T> dz, dw;
  Cplx<T> zzb, zwb, wzb, wwb;
};

inline WData<Taylor> wdata(const Taylor& r) {
  WData<Taylor> d;
  d.dz = wderiv(r, WDir::z);
  d.dw = wderiv(r, WDir::w);
  d.zzb = wderiv(d.dz, WDir::zb);
  d.zwb = wderiv(d.dz, WDir::wb);
  d.wzb = wderiv(d.dw, WDir::zb);
  d.wwb = wderiv(d.dw, WDir::wb);
  return d;
}

inline WData<double> wdata(const Jet2& j) {
  auto c = [](cd v) { return Cplx<double>{v.real(), v.imag()}; };
  return {c(j.dz), c(j.dw), c(j.dzzb), c(j.dzwb), c(j.dwzb), c(j.dwwb)};
}

template <class T>
struct FrameT {
  Cplx<T> L0, L1, N0, N1;
  T n;
};

/// L = (r_w, -r_z)/n, N = (conj r_z, conj r_w)/n, n = sqrt(|r_z|^2 + |r_w|^2).
template <class T>
FrameT<T> frame_of(const WData<T>& d) {
  T n = sqrt(abs2(d.dz) + abs2(d.dw));
  return {d.dw / n, -d.dz / n, conj(d.dz) / n, conj(d.dw) / n, n};
}

/// Hess(A, B) = sum A_j conj(B_k) f_{j kb}.
template <class T>
Cplx<T> hess(const WData<T>& d, const Cplx<T>& a0, const Cplx<T>& a1, const Cplx<T>& b0,
             const Cplx<T>& b1) {
  return a0 * conj(b0) * d.zzb + a0 * conj(b1) * d.zwb + a1 * conj(b0) * d.wzb +
         a1 * conj(b1) * d.wwb;
}

/// X f = X0 f_z + X1 f_w for the function with Wirtinger data d.
template <class T>
Cplx<T> apply(const Cplx<T>& x0, const Cplx<T>& x1, const WData<T>& d) {
  return x0 * d.dz + x1 * d.dw;
}

}  // namespace dfforge
