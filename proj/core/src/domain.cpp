#include "dfforge/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dfforge/errors.hpp"
#include "dfforge/linalg.hpp"
#include "dfforge/parallel.hpp"
#include "dfforge/sampling.hpp"
#include "spatial_hash.hpp"

namespace dfforge {

ValueGrad value_gradient(const ScalarField& f, const CPoint& p, const DiffScheme& scheme) {
  ValueGrad out;
  const bool exact = scheme.mode == DiffScheme::Mode::Exact ||
                     (scheme.mode == DiffScheme::Mode::Auto && f.exact());
  if (exact) {
    Taylor t = f.expand(p, 1);
    out.val = t[0];
    for (int i = 0; i < 4; ++i) out.grad[i] = t[1 + i];
    return out;
  }
  auto g = [&f](const Vec4& x) { return f(CPoint::from_real(x)); };
  // Gradient only: one Richardson-extrapolated central difference per axis.
  const Vec4 x = p.real();
  const double h0 = scheme.base_step * std::max(1.0, norm(x));
  out.val = f(p);
  for (int i = 0; i < 4; ++i) {
    auto d = [&](double h) {
      Vec4 a = x, b = x;
      a[i] += h;
      b[i] -= h;
      return (g(a) - g(b)) / (2.0 * h);
    };
    const double d1 = d(h0), d2 = d(0.5 * h0);
    out.grad[i] = d2 + (d2 - d1) / 3.0;
  }
  return out;
}

CPoint project_to_boundary(const DefiningFunction& rho, const CPoint& p, const DomainTolerances& tol,
                           const DiffScheme& scheme) {
  const double scale = rho.bbox.bounded() ? rho.bbox.diameter() : std::max(1.0, p.norm());
  const double max_step = 0.25 * scale;
  Vec4 x = p.real();
  ValueGrad vg = value_gradient(rho.field, CPoint::from_real(x), scheme);
  double g = norm(vg.grad);
  if (g <= tol.grad_floor) {
    x[0] += 1e-3 * scale;  // deterministic tie-break at a critical point
    vg = value_gradient(rho.field, CPoint::from_real(x), scheme);
    g = norm(vg.grad);
    if (g <= tol.grad_floor)
      throw DegenerateGradient("gradient vanishes at the projection start");
  }
  for (int it = 0; it < tol.max_iter; ++it) {
    if (std::abs(vg.val) <= tol.boundary_tol * g) return CPoint::from_real(x);
    Vec4 dir = (-vg.val / (g * g)) * vg.grad;
    const double len = norm(dir);
    if (len > max_step) dir = (max_step / len) * dir;
    double t = 1.0;
    Vec4 trial;
    ValueGrad tv;
    for (;;) {
      trial = x + t * dir;
      tv = value_gradient(rho.field, CPoint::from_real(trial), scheme);
      if (std::abs(tv.val) < std::abs(vg.val)) break;
      t *= 0.5;
      if (t < 1e-12) throw NoConvergence("projection line search stalled");
    }
    x = trial;
    vg = tv;
    g = norm(vg.grad);
    if (g <= tol.grad_floor) throw DegenerateGradient("gradient collapsed during projection");
  }
  if (std::abs(vg.val) <= tol.boundary_tol * g) return CPoint::from_real(x);
  throw NoConvergence("projection did not converge in " + std::to_string(tol.max_iter) +
                      " iterations");
}

Frame frame_from_jet(const Jet2& j, double grad_floor) {
  const double n = std::sqrt(std::norm(j.dz) + std::norm(j.dw));
  if (!(n > grad_floor)) throw DegenerateGradient("|d rho| below the gradient floor");
  Frame f;
  f.grad_norm = n;
  f.L = {j.dw / n, -j.dz / n};
  f.N = {std::conj(j.dz) / n, std::conj(j.dw) / n};
  return f;
}

Frame frame(const DefiningFunction& rho, const CPoint& q, const DomainTolerances& tol,
            const DiffScheme& scheme) {
  return frame_from_jet(jet2(rho.field, q, scheme), tol.grad_floor);
}

LeviForm levi_from_jet(const Jet2& j, double grad_floor) {
  const double n2 = std::norm(j.dz) + std::norm(j.dw);
  if (!(std::sqrt(n2) > grad_floor)) throw DegenerateGradient("|d rho| below the gradient floor");
  const CVec2 Lt{j.dw, -j.dz};
  LeviForm out;
  out.unnormalized = j.hess(Lt, Lt).real();
  out.normalized = out.unnormalized / n2;
  return out;
}

LeviForm levi_form(const DefiningFunction& rho, const CPoint& q, const DomainTolerances& tol,
                   const DiffScheme& scheme) {
  return levi_from_jet(jet2(rho.field, q, scheme), tol.grad_floor);
}

BoundarySample boundary_sample(const DefiningFunction& rho, std::size_t n, std::uint64_t seed,
                               const DomainTolerances& tol, const DiffScheme& scheme) {
  std::vector<CPoint> seeds;
  if (rho.seeder) {
    seeds = rho.seeder(n, seed);
  } else {
    if (!rho.bbox.bounded()) throw SamplingError("unbounded box and no seeder for " + rho.name);
    const Vec4 c = rho.bbox.center();
    const Vec4 half = 0.5 * (rho.bbox.hi - rho.bbox.lo);
    for (const CPoint& s : sphere_points(n, seed)) {
      const Vec4 r = s.real();
      seeds.push_back(CPoint::from_real(
          {c[0] + half[0] * r[0], c[1] + half[1] * r[1], c[2] + half[2] * r[2], c[3] + half[3] * r[3]}));
    }
  }
  std::vector<CPoint> proj(seeds.size());
  std::vector<char> ok(seeds.size(), 0);
  std::vector<double> gn(seeds.size(), 0.0);
  parallel_for(seeds.size(), [&](std::size_t i) {
    try {
      proj[i] = project_to_boundary(rho, seeds[i], tol, scheme);
      gn[i] = norm(value_gradient(rho.field, proj[i], scheme).grad);
      ok[i] = 1;
    } catch (const Error&) {
      ok[i] = 0;
    }
  });
  BoundarySample out;
  out.attempted = seeds.size();
  out.min_grad_norm = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!ok[i]) continue;
    out.points.push_back(proj[i]);
    out.seed_index.push_back(i);
    out.min_grad_norm = std::min(out.min_grad_norm, gn[i]);
  }
  if (2 * out.points.size() < n)
    throw SamplingError("only " + std::to_string(out.points.size()) + " of " + std::to_string(n) +
                        " boundary projections converged for " + rho.name);
  return out;
}

double median_nn_distance(const std::vector<Vec4>& pts, std::size_t max_queries) {
  const std::size_t n = pts.size();
  if (n < 2) return 0.0;
  Vec4 lo = pts[0], hi = pts[0];
  for (const auto& p : pts)
    for (int i = 0; i < 4; ++i) lo[i] = std::min(lo[i], p[i]), hi[i] = std::max(hi[i], p[i]);
  const double diam = std::max(norm(hi - lo), 1e-12);
  // Boundaries are 3-dimensional: spacing ~ diam * n^{-1/3}.
  const double cell = diam / std::cbrt(static_cast<double>(n));
  detail::SpatialHash4 hash(pts, cell);
  const std::size_t stride = std::max<std::size_t>(1, n / max_queries);
  std::vector<double> d;
  for (std::size_t q = 0; q < n; q += stride) {
    double best = std::numeric_limits<double>::infinity();
    for (int ring = 1;; ++ring) {
      hash.for_near(pts[q], ring, [&](std::size_t j) {
        if (j != q) best = std::min(best, norm(pts[j] - pts[q]));
      });
      if (best <= ring * cell || ring * cell > 2.0 * diam) break;
    }
    if (std::isfinite(best)) d.push_back(best);
  }
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2), d.end());
  return d[d.size() / 2];
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // smallest index is the root: deterministic labels
  }
};

void classify(LeviComponent& comp, double resolution, const LeviScanOptions& opt) {
  const std::size_t m = comp.points.size();
  Vec4 c{};
  for (const auto& p : comp.points) c = c + p.real();
  c = (1.0 / static_cast<double>(m)) * c;
  comp.centroid = c;
  Mat4 cov{};
  double extent = 0.0;
  for (const auto& p : comp.points) {
    const Vec4 d = p.real() - c;
    extent = std::max(extent, norm(d));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) cov[i][j] += d[i] * d[j] / static_cast<double>(m);
  }
  comp.extent = extent;
  const SymEigen4 es = sym_eigen(cov);
  comp.pca = es.values;
  // Ring fit in the top principal plane.
  double sum = 0.0, sum2 = 0.0;
  for (const auto& p : comp.points) {
    const Vec4 d = p.real() - c;
    const double a = dot(d, es.vectors[0]), b = dot(d, es.vectors[1]);
    const double r = std::hypot(a, b);
    sum += r;
    sum2 += r * r;
  }
  const double mean = sum / static_cast<double>(m);
  const double var = std::max(0.0, sum2 / static_cast<double>(m) - mean * mean);
  comp.ring_radius = mean;
  comp.ring_spread = mean > 0.0 ? std::sqrt(var) / mean : 0.0;

  const double tiny = 1e-300;
  const bool elongated = es.values[0] > opt.curve_ratio * std::max(es.values[1], tiny);
  const bool planar = es.values[1] > opt.curve_ratio * std::max(es.values[2], tiny);
  const bool ring = planar && comp.ring_spread < opt.ring_spread && m >= 8;
  if (extent <= opt.point_factor * resolution)
    comp.classification = "point-like";
  else if (elongated || ring)
    comp.classification = "curve-like";
  else
    comp.classification = "other";
}

}  // namespace

LeviScanReport levi_flat_scan(const DefiningFunction& rho, const LeviScanOptions& opt,
                              const DomainTolerances& tol, const DiffScheme& scheme) {
  BoundarySample bs = boundary_sample(rho, opt.n_samples, opt.seed, tol, scheme);
  const std::size_t n = bs.points.size();
  std::vector<double> levi(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    levi[i] = levi_form(rho, bs.points[i], tol, scheme).normalized;
  });
  LeviScanReport rep;
  rep.domain = rho.name;
  rep.n_samples = opt.n_samples;
  rep.n_converged = n;
  rep.flat_tol = opt.flat_tol;
  std::vector<Vec4> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = bs.points[i].real();
  rep.resolution = median_nn_distance(all);

  std::vector<std::size_t> flat;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(levi[i]) < opt.flat_tol) flat.push_back(i);
  rep.n_flat = flat.size();
  if (flat.empty()) return rep;

  std::vector<Vec4> fp(flat.size());
  for (std::size_t k = 0; k < flat.size(); ++k) fp[k] = all[flat[k]];
  const double link = std::max(opt.link_factor * rep.resolution, 1e-12);
  detail::SpatialHash4 hash(fp, link);
  UnionFind uf(flat.size());
  for (std::size_t a = 0; a < fp.size(); ++a) {
    hash.for_near(fp[a], 1, [&](std::size_t b) {
      if (b > a && norm(fp[a] - fp[b]) <= link) uf.unite(a, b);
    });
  }
  std::vector<std::size_t> root_to_comp(flat.size(), SIZE_MAX);
  for (std::size_t a = 0; a < fp.size(); ++a) {
    const std::size_t r = uf.find(a);
    if (root_to_comp[r] == SIZE_MAX) {
      root_to_comp[r] = rep.components.size();
      rep.components.emplace_back();
    }
    auto& comp = rep.components[root_to_comp[r]];
    comp.points.push_back(bs.points[flat[a]]);
    comp.levi.push_back(levi[flat[a]]);
  }
  for (auto& comp : rep.components) classify(comp, rep.resolution, opt);
  std::stable_sort(rep.components.begin(), rep.components.end(),
                   [](const LeviComponent& a, const LeviComponent& b) {
                     return a.points.size() > b.points.size();
                   });
  return rep;
}

CurveSamples CurveSamples::from_points(std::vector<CPoint> pts, bool closed) {
  CurveSamples c;
  c.points = std::move(pts);
  c.closed = closed;
  const std::size_t n = c.points.size();
  c.tangents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a, b;
    if (closed) {
      a = (i + n - 1) % n;
      b = (i + 1) % n;
    } else {
      a = i == 0 ? 0 : i - 1;
      b = i + 1 == n ? i : i + 1;
    }
    Vec4 t = c.points[b].real() - c.points[a].real();
    const double len = norm(t);
    c.tangents[i] = len > 0 ? (1.0 / len) * t : Vec4{};
  }
  return c;
}

double curve_boundary_defect(const CurveSamples& c, const DefiningFunction& rho,
                             const DiffScheme& scheme) {
  double worst = 0.0;
  for (const auto& p : c.points) {
    const ValueGrad vg = value_gradient(rho.field, p, scheme);
    worst = std::max(worst, std::abs(vg.val) / std::max(norm(vg.grad), 1e-300));
  }
  return worst;
}

std::array<Vec4, 2> realified(const CVec2& L) {
  const cd f = L[0], g = L[1];
  return {Vec4{f.real(), f.imag(), g.real(), g.imag()}, Vec4{f.imag(), -f.real(), g.imag(), -g.real()}};
}

TransversalityReport transversality_check(const CurveSamples& c, const DefiningFunction& rho,
                                          double floor, const DomainTolerances& tol,
                                          const DiffScheme& scheme) {
  TransversalityReport rep;
  rep.floor = floor;
  const std::size_t n = c.size();
  rep.sigma_min.resize(n);
  rep.sigma_min_L.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const Frame f = frame(rho, c.points[i], tol, scheme);
    const auto rl = realified(f.L);
    const std::array<Vec4, 3> m3{c.tangents[i], rl[0], rl[1]};
    const std::array<Vec4, 2> m2{rl[0], rl[1]};
    rep.sigma_min[i] = min_singular_value(m3);
    rep.sigma_min_L[i] = min_singular_value(m2);
  });
  rep.min_sigma = n ? *std::min_element(rep.sigma_min.begin(), rep.sigma_min.end()) : 0.0;
  rep.min_sigma_L = n ? *std::min_element(rep.sigma_min_L.begin(), rep.sigma_min_L.end()) : 0.0;
  rep.transversal = n > 0 && rep.min_sigma > floor;
  return rep;
}

}  // namespace dfforge
