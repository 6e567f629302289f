#include "dfforge/hessian_frame.hpp"

#include <algorithm>
#include <cmath>

#include "dfforge/errors.hpp"
#include "dfforge/linalg.hpp"
#include "dfforge/parallel.hpp"
#include "dfforge/sampling.hpp"

namespace dfforge {

FrameHessian frame_hessian_from_jet(const Jet2& j, double grad_floor) {
  const Frame f = frame_from_jet(j, grad_floor);
  FrameHessian h;
  h.L = f.L;
  h.N = f.N;
  h.grad_norm = f.grad_norm;
  h.rho = j.val;
  h.H_LL = j.hess(f.L, f.L).real();
  h.H_LN = j.hess(f.L, f.N);
  h.H_NN = j.hess(f.N, f.N).real();
  h.N_rho = along(f.N, j);
  return h;
}

FrameHessian frame_hessian(const DefiningFunction& rho, const CPoint& p, const DomainTolerances& tol,
                           const DiffScheme& scheme) {
  return frame_hessian_from_jet(jet2(rho.field, p, scheme), tol.grad_floor);
}

Pencil Pencil::from_jet(const Jet2& j) {
  Pencil m;
  m.rho = j.val;
  const double s = -j.val;
  m.a = s * j.dzzb.real();
  m.d = s * j.dwwb.real();
  m.b = s * 0.5 * (j.dzwb + std::conj(j.dwzb));
  m.v = {j.dz, j.dw};
  return m;
}

double Pencil::min_eig(double eta) const {
  const double s = 1.0 - eta;
  return herm2_min_eig(a + s * std::norm(v[0]), b + s * v[0] * std::conj(v[1]), d + s * std::norm(v[1]));
}

double Pencil::eta_max() const {
  const double v2 = std::norm(v[0]) + std::norm(v[1]);
  const double det0 = a * d - std::norm(b);
  if (v2 == 0.0) return (a >= 0.0 && d >= 0.0 && det0 >= 0.0) ? 1.0 : 0.0;
  const double s_tr = std::max(0.0, -(a + d) / v2);
  const cd c = v[0] * std::conj(v[1]);
  const double slope = a * std::norm(v[1]) + d * std::norm(v[0]) - 2.0 * (b * std::conj(c)).real();
  double s_det;
  if (det0 >= 0.0) {
    s_det = 0.0;
  } else if (slope > 0.0) {
    s_det = -det0 / slope;
  } else {
    return 0.0;
  }
  const double s_star = std::max(s_tr, s_det);
  return std::clamp(1.0 - s_star, 0.0, 1.0);
}

double psd_eta_max(const DefiningFunction& rho, const CPoint& p, const DiffScheme& scheme) {
  const Jet2 j = jet2(rho.field, p, scheme);
  if (!(j.val < 0.0)) throw InteriorError("threshold requested at a point with rho >= 0");
  return Pencil::from_jet(j).eta_max();
}

double Decomposition::prefactor() const {
  return -eta * std::exp(-delta * eta * zeta2) * std::pow(-rho, eta - 1.0);
}

double Decomposition::assembled(cd a, cd b) const {
  const double q = std::norm(a) * I + 2.0 * (a * std::conj(b) * II).real() + std::norm(b) * III;
  return prefactor() * q;
}

Decomposition decompose(const ScalarField& r, const ScalarField& psi, double eta, double delta,
                        const CPoint& p, const DiffScheme& scheme) {
  const Jet2 jr = jet2(r, p, scheme);
  if (!(jr.val < 0.0)) throw DomainError("decomposition requested where r >= 0");
  const Jet2 jp = jet2(psi, p, scheme);
  const double e = std::exp(jp.val);

  // rho = r e^psi from the jets of r and psi.
  Jet2 jq;
  jq.val = jr.val * e;
  jq.dz = e * (jr.dz + jr.val * jp.dz);
  jq.dw = e * (jr.dw + jr.val * jp.dw);
  auto mixed = [&](cd rjk, cd pjk, cd rj, cd rk_bar, cd pj, cd pk_bar) {
    return e * (rjk + rj * pk_bar + pj * rk_bar + jr.val * pj * pk_bar + jr.val * pjk);
  };
  jq.dzzb = mixed(jr.dzzb, jp.dzzb, jr.dz, jr.dzb(), jp.dz, jp.dzb());
  jq.dzwb = mixed(jr.dzwb, jp.dzwb, jr.dz, jr.dwb(), jp.dz, jp.dwb());
  jq.dwzb = mixed(jr.dwzb, jp.dwzb, jr.dw, jr.dzb(), jp.dw, jp.dzb());
  jq.dwwb = mixed(jr.dwwb, jp.dwwb, jr.dw, jr.dwb(), jp.dw, jp.dwb());

  const Frame f = frame_from_jet(jq);
  const CVec2& L = f.L;
  const CVec2& N = f.N;
  const cd z = p.z, w = p.w;
  const double r0 = jr.val, rho = jq.val;

  // |zeta|^2 = |z|^2 + |w|^2: first derivatives (conj z, conj w), Hessian the identity.
  const cd L_z2 = L[0] * std::conj(z) + L[1] * std::conj(w);
  const cd N_z2 = N[0] * std::conj(z) + N[1] * std::conj(w);
  const cd Nb_z2 = std::conj(N_z2);

  const cd L_psi = along(L, jp), L_r = along(L, jr);
  const cd Nb_r = along_bar(N, jr), Nb_psi = along_bar(N, jp);
  const cd N_rho = along(N, jq), Nb_rho = along_bar(N, jq);

  Decomposition dcp;
  dcp.eta = eta;
  dcp.delta = delta;
  dcp.p = p;
  dcp.r = r0;
  dcp.psi = jp.val;
  dcp.rho = rho;
  dcp.zeta2 = std::norm(z) + std::norm(w);
  dcp.L = L;
  dcp.N = N;

  const double d2e = delta * delta * eta;
  dcp.I = e * (d2e * (-r0) * std::norm(L_z2) - delta * (-r0) + r0 * std::norm(L_psi) -
               jr.hess(L, L).real() - r0 * jp.hess(L, L).real());
  dcp.II = e * (delta * eta * L_z2 * Nb_r + delta * eta * r0 * L_z2 * Nb_psi +
                d2e * (-r0) * L_z2 * Nb_z2 - L_psi * Nb_r - L_r * Nb_psi - r0 * L_psi * Nb_psi -
                jr.hess(L, N) - r0 * jp.hess(L, N));
  dcp.III = (delta * eta * N_rho * Nb_z2 + delta * eta * N_z2 * Nb_rho).real() +
            d2e * (-rho) * std::norm(N_z2) - delta * (-rho) - jq.hess(N, N).real() +
            (eta - 1.0) * std::norm(N_rho) / (-rho);

  dcp.II_bound = e * (delta * eta * std::abs(L_z2 * Nb_r) + std::abs(L_psi * Nb_r) +
                      std::abs(jr.hess(L, N)));
  const cd N_r = along(N, jr);
  dcp.III_bound = e / (-2.0 * r0) * (eta - 1.0) * std::norm(N_r);
  return dcp;
}

double direct_candidate_form(const ScalarField& candidate, const Decomposition& dec, cd a, cd b,
                             const DiffScheme& scheme) {
  const Jet2 j = jet2(candidate, dec.p, scheme);
  const CVec2 x{a * dec.L[0] + b * dec.N[0], a * dec.L[1] + b * dec.N[1]};
  return j.hess(x, x).real();
}

CollarReport collar_inequality_check(const ScalarField& r, const ScalarField& psi, double eta,
                                     double delta, const std::vector<CPoint>& points,
                                     std::size_t n_ab, const DiffScheme& scheme) {
  const auto ab = fibonacci_c2(n_ab);
  CollarReport rep;
  rep.points.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Decomposition d = decompose(r, psi, eta, delta, points[i], scheme);
    CollarPointCheck c;
    c.p = points[i];
    c.r = d.r;
    c.III_margin = d.III_bound - d.III;
    c.III_bound_ok = d.III < d.III_bound;
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& v : ab) mn = std::min(mn, d.assembled(v[0], v[1]));
    c.min_form = mn;
    c.form_positive = mn > 0.0;
    const double pf = d.prefactor();
    c.min_eig = herm2_min_eig(pf * d.I, pf * std::conj(d.II), pf * d.III);
    rep.points[i] = c;
  });
  rep.all_III = true;
  rep.all_positive = true;
  rep.worst_III_margin = std::numeric_limits<double>::infinity();
  rep.worst_form = std::numeric_limits<double>::infinity();
  for (const auto& c : rep.points) {
    rep.all_III = rep.all_III && c.III_bound_ok;
    rep.all_positive = rep.all_positive && c.form_positive;
    rep.worst_III_margin = std::min(rep.worst_III_margin, c.III_margin);
    rep.worst_form = std::min(rep.worst_form, c.min_form);
  }
  std::vector<std::size_t> order(rep.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(rep.points[a].r) < std::abs(rep.points[b].r);
  });
  for (std::size_t k : order) {
    const auto& c = rep.points[k];
    if (!(c.III_bound_ok && c.form_positive)) break;
    rep.largest_passing_depth = std::abs(c.r);
  }
  return rep;
}

}  // namespace dfforge
