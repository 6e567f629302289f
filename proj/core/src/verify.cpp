#include "dfforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dfforge/errors.hpp"
#include "dfforge/hessian_frame.hpp"
#include "dfforge/parallel.hpp"
#include "dfforge/sampling.hpp"
#include "dfforge/weight.hpp"

namespace dfforge {

namespace {

double param(const CatalogEntry& e, const std::string& key) {
  auto it = e.params.find(key);
  if (it == e.params.end()) throw ParamError(e.name + " entry lacks parameter " + key);
  return it->second;
}

}  // namespace

CircleData flat_circle_data(const CatalogEntry& e) {
  std::string level;
  if (e.name == "exp_flat") {
    level = "b";
  } else if (e.name == "glued") {
    level = "b2_level";
  } else {
    throw ParamError("no flat circle known for " + e.name);
  }
  return {cd(param(e, "x0"), param(e, "y0")), std::sqrt(param(e, level) / param(e, "a")),
          cd(0.0, param(e, "v0"))};
}

Curve flat_circle(const CatalogEntry& e) {
  const CircleData c = flat_circle_data(e);
  return Curve::circle(c.center, c.radius, c.w0);
}

double distance_to_circle(const CPoint& q, cd c, double r, cd w0) {
  const double dz = std::abs(q.z - c) - r;
  return std::sqrt(dz * dz + std::norm(q.w - w0));
}

DefiningFunction perturbed(const DefiningFunction& rho, double eps, char coord) {
  if (coord != 'z' && coord != 'w') throw ParamError("perturbation coordinate must be z or w");
  const bool on_w = coord == 'w';
  auto f = compose(rho.name + "*exp(" + std::to_string(eps) + " Re " + coord + ")", {rho.field},
                   [eps, on_w](auto in, const auto& z, const auto& w) {
                     return in[0] * exp((on_w ? w.re : z.re) * eps);
                   });
  DefiningFunction out(f, rho.bbox, f.name());
  out.seeder = rho.seeder;
  return out;
}

GluedParams glued_params(const CatalogEntry& e) {
  if (e.name != "glued") throw ParamError("not a glued entry: " + e.name);
  GluedParams gp;
  gp.K = param(e, "K");
  gp.eta = param(e, "eta");
  gp.delta = param(e, "delta");
  gp.a = param(e, "a");
  gp.z0 = cd(param(e, "x0"), param(e, "y0"));
  gp.v0 = param(e, "v0");
  gp.eps0 = param(e, "eps0");
  gp.kappa_rel = param(e, "kappa_rel");
  return gp;
}

std::vector<CPoint> interior_points(const DefiningFunction& r, std::size_t n, std::uint64_t seed,
                                    double margin) {
  if (!r.bbox.bounded()) throw SamplingError("interior sampling needs a bounded box");
  Rng rng(seed);
  std::vector<CPoint> out;
  const std::size_t max_tries = 1000 * n + 1000;
  for (std::size_t k = 0; k < max_tries && out.size() < n; ++k) {
    Vec4 x;
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform(r.bbox.lo[i], r.bbox.hi[i]);
    const CPoint p = CPoint::from_real(x);
    if (!r.field.region().contains(p)) continue;
    if (r(p) <= -margin) out.push_back(p);
  }
  if (out.size() < n) throw SamplingError("too few interior points for " + r.name);
  return out;
}

IdentityCheck decomposition_identity_check(const CatalogEntry& e, const IdentityOptions& opt,
                                           const DiffScheme& scheme) {
  IdentityCheck chk;
  chk.domain = e.spec;
  chk.opt = opt;
  const WeightedCandidate wc = build_candidate(e.rho.field, opt.C, opt.eta, opt.delta);
  const auto pts = interior_points(e.rho, opt.n_points, opt.seed, opt.margin);

  Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<cd, cd>> ab(opt.n_ab);
  for (auto& v : ab) {
    // Uniform on the unit disc, independently for a and b.
    auto disc = [&rng] {
      const double rad = std::sqrt(rng.uniform()), th = 2.0 * std::numbers::pi * rng.uniform();
      return std::polar(rad, th);
    };
    v = {disc(), disc()};
  }

  DiffScheme numeric = scheme;
  numeric.mode = DiffScheme::Mode::Numeric;
  chk.points.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Decomposition d = decompose(e.rho.field, wc.psi, opt.eta, opt.delta, pts[i], scheme);
    const Jet2 je = jet2(wc.candidate, pts[i], scheme);
    const Jet2 jn = jet2(wc.candidate, pts[i], numeric);
    std::vector<double> A(ab.size()), De(ab.size()), Dn(ab.size());
    double scale = 0.0;
    for (std::size_t k = 0; k < ab.size(); ++k) {
      const auto [a, b] = ab[k];
      const CVec2 x{a * d.L[0] + b * d.N[0], a * d.L[1] + b * d.N[1]};
      A[k] = d.assembled(a, b);
      De[k] = je.hess(x, x).real();
      Dn[k] = jn.hess(x, x).real();
      scale = std::max(scale, std::abs(De[k]));
    }
    IdentityPoint ip;
    ip.p = pts[i];
    ip.r = d.r;
    ip.max_abs_direct = scale;
    for (std::size_t k = 0; k < ab.size(); ++k) {
      const double den = std::max(std::abs(De[k]), 1e-12 * scale);
      ip.rel_err_exact = std::max(ip.rel_err_exact, std::abs(A[k] - De[k]) / den);
      const double den_n = std::max(std::abs(Dn[k]), 1e-12 * scale);
      ip.rel_err_numeric = std::max(ip.rel_err_numeric, std::abs(A[k] - Dn[k]) / den_n);
    }
    chk.points[i] = ip;
  });
  for (const auto& ip : chk.points) {
    chk.max_rel_err_exact = std::max(chk.max_rel_err_exact, ip.rel_err_exact);
    chk.max_rel_err_numeric = std::max(chk.max_rel_err_numeric, ip.rel_err_numeric);
  }
  return chk;
}

FlatLocusCheck exp_flat_locus_check(const CatalogEntry& e, const LeviScanOptions& opt,
                                    const DomainTolerances& tol, const DiffScheme& scheme) {
  if (e.name != "exp_flat") throw ParamError("flat locus check needs an exp_flat entry");
  FlatLocusCheck chk;
  const CircleData circ = flat_circle_data(e);
  chk.center = circ.center;
  chk.radius = circ.radius;
  chk.w0 = circ.w0;
  chk.scan = levi_flat_scan(e.rho, opt, tol, scheme);
  chk.root = no_extra_flat_root_check(e);

  std::vector<CPoint> flat;
  for (const auto& c : chk.scan.components) {
    (c.classification == "curve-like" ? chk.n_curve_like : chk.n_other) += 1;
    flat.insert(flat.end(), c.points.begin(), c.points.end());
  }
  if (flat.empty()) {
    chk.dist_points_to_circle = 0.0;
    chk.dist_circle_to_points = std::numeric_limits<double>::infinity();
    chk.hausdorff = chk.dist_circle_to_points;
    return chk;
  }
  for (const auto& q : flat)
    chk.dist_points_to_circle =
        std::max(chk.dist_points_to_circle, distance_to_circle(q, chk.center, chk.radius, chk.w0));
  const std::size_t n_circle = 3600;
  std::vector<double> dmin(n_circle);
  parallel_for(n_circle, [&](std::size_t k) {
    const CPoint c{chk.center + std::polar(chk.radius, 2.0 * std::numbers::pi * k / n_circle), chk.w0};
    double m = std::numeric_limits<double>::infinity();
    for (const auto& q : flat) m = std::min(m, distance(c, q));
    dmin[k] = m;
  });
  chk.dist_circle_to_points = *std::max_element(dmin.begin(), dmin.end());
  chk.hausdorff = std::max(chk.dist_points_to_circle, chk.dist_circle_to_points);
  return chk;
}

GluedCheck glued_check(const CatalogEntry& e, const GluedCheckOptions& opt,
                       const DomainTolerances& tol, const DiffScheme& scheme) {
  GluedCheck chk;
  chk.params = glued_params(e);
  chk.placement = check_placement(chk.params, behrens_tau().tau_hat);

  // A few extra seeds so that n_boundary projections converge.
  BoundarySample bs = boundary_sample(e.rho, opt.n_boundary + opt.n_boundary / 20 + 16, opt.seed,
                                      tol, scheme);
  if (bs.points.size() > opt.n_boundary) bs.points.resize(opt.n_boundary);
  chk.n_boundary = bs.points.size();
  chk.min_grad = std::numeric_limits<double>::infinity();
  for (const auto& q : bs.points)
    chk.min_grad = std::min(chk.min_grad, norm(value_gradient(e.rho.field, q, scheme).grad));
  for (const auto& q : bs.points) {
    if (glued_piece_count(chk.params, q) != 1) ++chk.partition_violations;
    const int piece = glued_piece(chk.params, q);
    if (piece >= 1) ++chk.piece_counts[static_cast<std::size_t>(piece - 1)];
  }

  chk.scan = levi_flat_scan(e.rho, opt.scan, tol, scheme);
  chk.b2_radius = flat_circle_data(e).radius;
  chk.confine_tol = opt.confine_factor * chk.scan.resolution;
  const cd w0(0.0, chk.params.v0);
  for (const auto& c : chk.scan.components) {
    for (const auto& q : c.points) {
      const double dc = distance_to_circle(q, chk.params.z0, chk.b2_radius, w0);
      const double d0 = q.norm();
      const double d = std::min(dc, d0);
      chk.max_confine_dist = std::max(chk.max_confine_dist, d);
      if (d > chk.confine_tol) {
        ++chk.n_outside;
      } else if (dc <= d0) {
        ++chk.n_near_circle;
      } else {
        ++chk.n_near_origin;
      }
    }
  }
  return chk;
}

FhGrid fh_grid(const CatalogEntry& e, const FhGridOptions& opt, const DomainTolerances& tol,
               const DiffScheme& scheme) {
  const CircleData circ = flat_circle_data(e);

  std::vector<std::pair<std::string, DefiningFunction>> family{{"raw", e.rho}};
  std::vector<std::pair<double, double>> cd_pairs{{0.0, 0.0}};
  for (double C : opt.C) {
    for (double dl : opt.delta) {
      const WeightedCandidate wc = build_candidate(e.rho.field, C, 1.0, dl);
      const std::string name = "fh:C=" + std::to_string(C) + ",delta=" + std::to_string(dl);
      family.emplace_back(name, DefiningFunction(wc.weighted, e.rho.bbox, name));
      cd_pairs.emplace_back(C, dl);
    }
  }
  const IndexReport idx = estimate_index(family, opt.collar, tol, scheme);

  FhGrid g;
  g.sigma_radii = opt.sigma_radii;
  const double raw = idx.entries.front().estimate.eta_hat;
  g.all_ge_raw = true;
  g.all_nondecreasing = true;
  for (std::size_t i = 0; i < idx.entries.size(); ++i) {
    const DFEstimate& est = idx.entries[i].estimate;
    FhGridRow row;
    row.recipe = idx.entries[i].recipe;
    row.C = cd_pairs[i].first;
    row.delta = cd_pairs[i].second;
    row.eta_hat = est.eta_hat;
    row.cross_check_ok = est.cross_check_ok;
    row.eta_collar_by_depth = est.eta_collar_by_depth;
    for (double s : opt.sigma_radii) {
      double m = 1.0;
      for (const auto& cp : est.points)
        if (distance_to_circle(cp.p, circ.center, circ.radius, circ.w0) < s) m = std::min(m, cp.eta);
      row.eta_near_sigma.push_back(m);
    }
    row.ge_raw = row.eta_hat >= raw;
    row.nondecreasing_toward_sigma = true;
    for (std::size_t k = 1; k < row.eta_near_sigma.size(); ++k)
      if (row.eta_near_sigma[k] < row.eta_near_sigma[k - 1]) row.nondecreasing_toward_sigma = false;
    if (i > 0) {
      g.all_ge_raw = g.all_ge_raw && row.ge_raw;
      g.all_nondecreasing = g.all_nondecreasing && row.nondecreasing_toward_sigma;
    }
    g.rows.push_back(std::move(row));
  }
  g.best = idx.best;
  g.best_recipe = idx.entries[idx.argmax].recipe;
  g.index = idx;
  return g;
}

}  // namespace dfforge
