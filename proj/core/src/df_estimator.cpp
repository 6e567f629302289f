#include "dfforge/df_estimator.hpp"

#include <algorithm>
#include <cmath>

#include "dfforge/errors.hpp"
#include "dfforge/parallel.hpp"

namespace dfforge {

std::vector<CollarPoint> collar_points(const DefiningFunction& rho, const CollarSpec& spec,
                                       std::size_t* skipped, const DomainTolerances& tol,
                                       const DiffScheme& scheme) {
  if (spec.depth_exponents.empty()) throw ParamError("collar needs at least one depth");
  const BoundarySample bs = boundary_sample(rho, spec.n_boundary, spec.seed, tol, scheme);
  const double diam = rho.bbox.diameter();
  const std::size_t nd = spec.depth_exponents.size();
  std::vector<CollarPoint> all(bs.points.size() * nd);
  std::vector<char> keep(all.size(), 0);
  parallel_for(bs.points.size(), [&](std::size_t i) {
    const CPoint& q = bs.points[i];
    const ValueGrad vg = value_gradient(rho.field, q, scheme);
    const Vec4 nu = (-1.0 / norm(vg.grad)) * vg.grad;
    for (std::size_t k = 0; k < nd; ++k) {
      const double depth = std::pow(10.0, -spec.depth_exponents[k]) * diam;
      CollarPoint c;
      c.base = q;
      c.p = CPoint::from_real(q.real() + depth * nu);
      c.depth = depth;
      c.depth_level = static_cast<int>(k);
      all[i * nd + k] = c;
      keep[i * nd + k] = rho(c.p) < 0.0;
    }
  });
  std::vector<CollarPoint> out;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i])
      out.push_back(all[i]);
    else
      ++dropped;
  }
  if (skipped) *skipped = dropped;
  if (out.empty()) throw SamplingError("no interior collar points for " + rho.name);
  return out;
}

namespace {

bool passes(const std::vector<Pencil>& pencils, double eta) {
  for (const auto& m : pencils) {
    const double scale = std::abs(m.a) + std::abs(m.d) + std::norm(m.v[0]) + std::norm(m.v[1]);
    if (m.min_eig(eta) < -1e-12 * scale) return false;
  }
  return true;
}

}  // namespace

DFEstimate estimate_on_points(const DefiningFunction& rho, std::vector<CollarPoint> points,
                              const CollarSpec& spec, const DiffScheme& scheme) {
  DFEstimate est;
  est.defining_function = rho.name;
  est.spec = spec;
  std::vector<Pencil> pencils(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Jet2 j = jet2(rho.field, points[i].p, scheme);
    if (!(j.val < 0.0)) throw InteriorError("collar point is not interior for " + rho.name);
    pencils[i] = Pencil::from_jet(j);
    points[i].eta = pencils[i].eta_max();
  });
  est.points = std::move(points);
  est.eta_hat = 1.0;
  for (std::size_t i = 0; i < est.points.size(); ++i) {
    if (est.points[i].eta < est.eta_hat) {
      est.eta_hat = est.points[i].eta;
      est.binding_index = i;
    }
  }
  est.eta_by_depth.assign(spec.depth_exponents.size(), 1.0);
  for (const auto& c : est.points) {
    auto& slot = est.eta_by_depth[static_cast<std::size_t>(c.depth_level)];
    slot = std::min(slot, c.eta);
  }
  const auto& ex = spec.depth_exponents;
  est.eta_collar_by_depth.assign(ex.size(), 1.0);
  for (std::size_t k = 0; k < ex.size(); ++k)
    for (std::size_t j = 0; j < ex.size(); ++j)
      if (ex[j] >= ex[k])
        est.eta_collar_by_depth[k] = std::min(est.eta_collar_by_depth[k], est.eta_by_depth[j]);

  // Independent route: bisection on the pass predicate.
  if (passes(pencils, 1.0)) {
    est.eta_bisect = 1.0;
  } else if (!passes(pencils, 0.0)) {
    est.eta_bisect = 0.0;
  } else {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 0.25 * spec.bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      (passes(pencils, mid) ? lo : hi) = mid;
    }
    est.eta_bisect = lo;
  }
  est.cross_check_ok = std::abs(est.eta_bisect - est.eta_hat) <= spec.bisect_tol;

  if (est.eta_hat < 1.0 && !pencils.empty()) {
    const double eta_w = std::min(1.0, est.eta_hat + spec.bisect_tol);
    const double ev = pencils[est.binding_index].min_eig(eta_w);
    if (ev < 0.0) est.fail_witness = FailWitness{est.points[est.binding_index].p, eta_w, ev};
  }
  return est;
}

DFEstimate estimate_exponent(const DefiningFunction& rho, const CollarSpec& spec,
                             const DomainTolerances& tol, const DiffScheme& scheme) {
  std::size_t skipped = 0;
  auto pts = collar_points(rho, spec, &skipped, tol, scheme);
  DFEstimate est = estimate_on_points(rho, std::move(pts), spec, scheme);
  est.skipped = skipped;
  return est;
}

IndexReport estimate_index(const std::vector<std::pair<std::string, DefiningFunction>>& family,
                           const CollarSpec& spec, const DomainTolerances& tol,
                           const DiffScheme& scheme) {
  if (family.empty()) throw ParamError("empty defining-function family");
  std::size_t skipped = 0;
  const auto pts = collar_points(family.front().second, spec, &skipped, tol, scheme);
  IndexReport rep;
  for (const auto& [name, rho] : family) {
    DFEstimate est = estimate_on_points(rho, pts, spec, scheme);
    est.skipped = skipped;
    rep.entries.push_back({name, std::move(est)});
  }
  rep.best = -1.0;
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    if (rep.entries[i].estimate.eta_hat > rep.best) {
      rep.best = rep.entries[i].estimate.eta_hat;
      rep.argmax = i;
    }
  }
  return rep;
}

}  // namespace dfforge
