#include "dfforge/transport.hpp"

#include <algorithm>
#include <cmath>

#include "dfforge/errors.hpp"
#include "dfforge/hessian_frame.hpp"
#include "dfforge/linalg.hpp"
#include "dfforge/parallel.hpp"
#include "dfforge/smooth.hpp"

namespace dfforge {

cd obstruction_rhs(const DefiningFunction& delta, const CPoint& q, RhsNormalization norm,
                   const DiffScheme& scheme) {
  const Jet2 j = jet2(delta.field, q, scheme);
  const Frame f = frame_from_jet(j);
  const cd hln = j.hess(f.L, f.N);
  if (norm == RhsNormalization::NbarDelta) {
    const cd nb = along_bar(f.N, j);
    if (!(std::abs(nb) > 0.0)) throw DegenerateGradient("Nbar(delta) vanishes");
    return -hln / nb;
  }
  // |grad delta| in the real chart is twice the complex gradient norm.
  return -hln / (2.0 * f.grad_norm);
}

ComplexFn obstruction_rhs_fn(const DefiningFunction& delta, RhsNormalization norm,
                             const DiffScheme& scheme) {
  return [delta, norm, scheme](const CPoint& q) { return obstruction_rhs(delta, q, norm, scheme); };
}

FrameCoords frame_coordinates(const Curve& c, const DefiningFunction& rho, const Vec4& x,
                              const DomainTolerances& tol, const DiffScheme& scheme) {
  FrameCoords fc;
  fc.t = c.nearest(x);
  const Vec4 g = c.pos(fc.t);
  fc.foot = CPoint::from_real(g);
  const Frame f = frame(rho, fc.foot, tol, scheme);
  const auto rl = realified(f.L);
  const std::array<Vec4, 3> cols{0.5 * rl[0], 0.5 * rl[1], c.vel(fc.t)};
  const Vec4 d = x - g;
  const auto s = least_squares3(cols, d);
  fc.s1 = s[0];
  fc.s2 = s[1];
  fc.s3 = s[2];
  fc.dist = norm(d);
  return fc;
}

TransportSolution solve_on_curve(const Curve& c, const DefiningFunction& rho, ComplexFn h,
                                 const TransportOptions& opt) {
  TransportSolution sol{c, c.sample(opt.n_samples), constant_field(0.0), {}, {}, {}, 0.0, 0.0, 0.0, false, {}};
  sol.transport_tol = opt.transport_tol;
  sol.transversality = transversality_check(sol.gamma, rho, opt.transv_floor, opt.tol, opt.scheme);
  if (!sol.transversality.transversal)
    throw TransversalityError("curve " + c.name() + " is not transversal to Re L, Im L (margin " +
                              std::to_string(sol.transversality.min_sigma) + ")");
  const Curve curve = c;
  const DefiningFunction r = rho;
  const DomainTolerances tol = opt.tol;
  const DiffScheme scheme = opt.scheme;
  auto u = [curve, r, h, tol, scheme](const CPoint& p) {
    const FrameCoords fc = frame_coordinates(curve, r, p.real(), tol, scheme);
    const cd hv = h(fc.foot);
    return hv.real() * fc.s1 + hv.imag() * fc.s2;
  };
  sol.u = black_box("transport_u(" + c.name() + ")", Region::everywhere(), u, opt.scheme);

  const std::size_t n = sol.gamma.size();
  sol.h_values.resize(n);
  sol.Lu.resize(n);
  sol.residuals.resize(n);
  std::vector<double> u0(n);
  parallel_for(n, [&](std::size_t i) {
    const CPoint& q = sol.gamma.points[i];
    sol.h_values[i] = h(q);
    const Frame f = frame(rho, q, opt.tol, opt.scheme);
    const Jet2 ju = jet2(sol.u, q, opt.scheme);
    sol.Lu[i] = along(f.L, ju);
    sol.residuals[i] = sol.Lu[i] - sol.h_values[i];
    u0[i] = ju.val;
  });
  for (std::size_t i = 0; i < n; ++i) {
    sol.max_residual = std::max(sol.max_residual, std::abs(sol.residuals[i]));
    sol.max_abs_u_on_curve = std::max(sol.max_abs_u_on_curve, std::abs(u0[i]));
  }
  sol.ok = sol.max_residual <= opt.transport_tol;
  return sol;
}

double radial_plateau(double d, double inner, double outer) {
  if (d <= inner) return 1.0;
  if (d >= outer) return 0.0;
  return 1.0 - smooth_step((d - inner) / (outer - inner));
}

std::vector<double> hess_LN_on_curve(const DefiningFunction& rho, const CurveSamples& c,
                                     const DiffScheme& scheme) {
  std::vector<double> out(c.size());
  parallel_for(c.size(), [&](std::size_t i) {
    out[i] = std::abs(frame_hessian(rho, c.points[i], {}, scheme).H_LN);
  });
  return out;
}

CorrectedDefining corrected_defining(const DefiningFunction& delta, const Curve& c,
                                     const CutoffSpec& cut, const TransportOptions& opt,
                                     double correction_tol) {
  const double reach = c.reach();
  const double inner = cut.inner > 0.0 ? cut.inner : 0.5 * reach;
  const double outer = cut.outer > 0.0 ? cut.outer : 0.75 * reach;
  if (!(inner > 0.0 && inner < outer && outer < reach))
    throw TubeError("tube radii must satisfy 0 < inner < outer < reach (" + std::to_string(inner) +
                    ", " + std::to_string(outer) + ", " + std::to_string(reach) + ")");
  TransportSolution ts = solve_on_curve(c, delta, obstruction_rhs_fn(delta, RhsNormalization::NbarDelta, opt.scheme), opt);

  const Curve curve = c;
  const ScalarField u = ts.u;
  auto phi = [curve, u, inner, outer](const CPoint& p) {
    double t;
    try {
      t = curve.nearest(p.real());
    } catch (const ProjectionAmbiguous&) {
      // Ambiguous projections lie at distance >= reach > outer.
      return 0.0;
    }
    const double d = norm(p.real() - curve.pos(t));
    const double chi = radial_plateau(d, inner, outer);
    return chi == 0.0 ? 0.0 : chi * u(p);
  };
  ScalarField Phi = black_box("cutoff_phi(" + c.name() + ")", Region::everywhere(), phi, opt.scheme);
  ScalarField corr = times_exp(delta.field, Phi).renamed(delta.name + "*exp(Phi)");
  DefiningFunction cd_fn(corr, delta.bbox, delta.name + "_corrected");
  cd_fn.seeder = delta.seeder;

  CorrectedDefining out{cd_fn, Phi, std::move(ts), 0.0, 0.0, 0.0, {}, {}};
  out.reach = reach;
  out.inner = inner;
  out.outer = outer;
  out.correction_tol = correction_tol;
  DiffScheme via_expansion = opt.scheme;
  via_expansion.mode = DiffScheme::Mode::Expand;
  out.before = hess_LN_on_curve(delta, out.transport.gamma, opt.scheme);
  out.after = hess_LN_on_curve(out.corrected, out.transport.gamma, via_expansion);
  for (double v : out.before) out.max_before = std::max(out.max_before, v);
  for (double v : out.after) out.max_after = std::max(out.max_after, v);
  out.ok = out.max_after <= correction_tol;
  return out;
}

}  // namespace dfforge
