#include "dfforge/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <sstream>

#include "dfforge/df_estimator.hpp"
#include "dfforge/errors.hpp"
#include "dfforge/parallel.hpp"
#include "dfforge/sampling.hpp"

namespace dfforge {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

/// Re(c q) for a complex constant c.
template <class T>
T re_times(cd c, const Cplx<T>& q) {
  return q.re * c.real() - q.im * c.imag();
}

template <class T>
T behrens_R(const Cplx<T>& z, const T& u) {
  const T s = abs2(z);
  const T s2 = s * s, s3 = s2 * s;
  const Cplx<T> zb = conj(z);
  const Cplx<T> zb2 = zb * zb, zb3 = zb2 * zb, zb4 = zb3 * zb, zb5 = zb4 * zb;
  const Cplx<T> z2 = z * z, z3 = z2 * z;
  const T P6 = 0.5 * s3 + 2.0 * (re_times(cd(-0.05, 0.0), zb5 * z) + re_times(cd(0.0, 0.25), zb4 * z2));
  const T Q4 = 0.5 * s2 + 2.0 * re_times(cd(0.0, -1.0 / 6.0), z3 * zb);
  const T u2 = u * u;
  return P6 + 2.0 * u * Q4 + s * u2 + s * u2 * u2 + s3 * s2 + s3 * u2;
}

template <class T>
T behrens_rho(const Cplx<T>& z, const Cplx<T>& w) {
  return w.im + behrens_R(z, w.re);
}

/// a|z - z0|^2 + 2 e^{-1/|w - i v0|^2}
template <class T>
T exp_flat_T(const Cplx<T>& z, const Cplx<T>& w, double a, cd z0, double v0) {
  return a * abs2(z - z0) + 2.0 * flat_exp(abs2(w - cd(0.0, v0)));
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double levi_at(const DefiningFunction& rho, const CPoint& p) {
  return levi_form(rho, p).normalized;
}

/// Unit vectors on S^2 (Fibonacci lattice).
std::vector<std::array<double, 3>> sphere2(std::size_t n) {
  std::vector<std::array<double, 3>> out(n);
  const double ga = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double zc = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    const double th = ga * static_cast<double>(i);
    out[i] = {r * std::cos(th), r * std::sin(th), zc};
  }
  return out;
}

}  // namespace

FactResult evaluate_fact(const KnownFact& f) {
  FactResult r;
  r.id = f.id;
  r.expected = f.expected;
  r.tol = f.tol;
  r.measured = f.measure();
  switch (f.relation) {
    case KnownFact::Relation::Equal:
      r.relation = "==";
      r.pass = std::abs(r.measured - r.expected) <= f.tol;
      break;
    case KnownFact::Relation::Greater:
      r.relation = ">";
      r.pass = r.measured > r.expected + f.tol;
      break;
    case KnownFact::Relation::Less:
      r.relation = "<";
      r.pass = r.measured < r.expected - f.tol;
      break;
  }
  return r;
}

// ---------------------------------------------------------------- ball, ellipsoid

CatalogEntry make_ellipsoid(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw ParamError("ellipsoid needs a, b > 0");
  auto f = expr_field("ellipsoid", Region::everywhere(), [a, b](const auto& z, const auto& w) {
    return a * abs2(z) + b * abs2(w) - 1.0;
  });
  const double rz = 1.0 / std::sqrt(a), rw = 1.0 / std::sqrt(b);
  const double m = 1.1 * std::max(rz, rw);
  CatalogEntry e{"ellipsoid", "ellipsoid:a=" + num(a) + ",b=" + num(b),
                 "a|z|^2 + b|w|^2 < 1", "internal",
                 DefiningFunction(f, Region::box({-m, -m, -m, -m}, {m, m, m, m}), "ellipsoid"),
                 {{"a", a}, {"b", b}}, {}};
  const DefiningFunction rho = e.rho;
  e.facts.push_back({"rho_at_origin", KnownFact::Relation::Equal, -1.0, 0.0,
                     [rho] { return rho(CPoint{0.0, 0.0}); }});
  e.facts.push_back({"levi_at_z_axis_point", KnownFact::Relation::Equal, b, 1e-12,
                     [rho, rz] { return levi_at(rho, CPoint{rz, 0.0}); }});
  e.facts.push_back({"levi_at_w_axis_point", KnownFact::Relation::Equal, a, 1e-12,
                     [rho, rw] { return levi_at(rho, CPoint{0.0, rw}); }});
  return e;
}

CatalogEntry make_ball() {
  CatalogEntry e = make_ellipsoid(1.0, 1.0);
  e.name = "ball";
  e.spec = "ball";
  e.description = "|z|^2 + |w|^2 < 1";
  e.rho.name = "ball";
  e.rho.field = e.rho.field.renamed("ball");
  e.params.clear();
  return e;
}

// ---------------------------------------------------------------- exponentially flat domains

CatalogEntry make_exp_flat(double a, double b, cd z0, double v0) {
  if (!(a > 0.0)) throw ParamError("exp_flat needs a > 0");
  if (!(b > 0.0 && b < 2.0)) throw ParamError("exp_flat needs b in (0, 2)");
  auto f = expr_field("exp_flat", Region::everywhere(), [a, b, z0, v0](const auto& z, const auto& w) {
    return exp_flat_T(z, w, a, z0, v0) - b;
  });
  const double rz = std::sqrt(b / a);
  const double rw = std::sqrt(1.0 / (std::log(2.0) - std::log(b)));
  const double mz = 1.1 * rz, mw = 1.1 * rw;
  const Region box = Region::box({z0.real() - mz, z0.imag() - mz, -mw, v0 - mw},
                                 {z0.real() + mz, z0.imag() + mz, mw, v0 + mw});
  CatalogEntry e;
  e.name = "exp_flat";
  e.spec = "exp_flat:a=" + num(a) + ",b=" + num(b) + ",x0=" + num(z0.real()) + ",y0=" +
           num(z0.imag()) + ",v0=" + num(v0);
  e.description = "a|z - z0|^2 + 2 exp(-1/|w - i v0|^2) < b";
  e.rho = DefiningFunction(f, box, "exp_flat");
  e.params = {{"a", a}, {"b", b}, {"x0", z0.real()}, {"y0", z0.imag()}, {"v0", v0}};
  const DefiningFunction rho = e.rho;
  e.facts.push_back({"flat_circle_radius", KnownFact::Relation::Equal, rz, 1e-12, [rho, z0, v0, rz] {
                       return bisect_root([&](double x) { return rho(CPoint{z0 + x, cd(0.0, v0)}); },
                                          0.0, 2.0 * rz);
                     }});
  e.facts.push_back({"north_pole_height", KnownFact::Relation::Equal, v0 + rw, 1e-12,
                     [rho, z0, v0, rw] {
                       return v0 + bisect_root(
                                       [&](double s) { return rho(CPoint{z0, cd(0.0, v0 + s)}); },
                                       0.0, 2.0 * rw);
                     }});
  e.facts.push_back({"levi_on_flat_circle", KnownFact::Relation::Equal, 0.0, 1e-12,
                     [rho, z0, v0, rz] {
                       double m = 0.0;
                       for (int k = 0; k < 16; ++k) {
                         const cd pz = z0 + std::polar(rz, 2.0 * kPi * k / 16.0);
                         m = std::max(m, std::abs(levi_at(rho, CPoint{pz, cd(0.0, v0)})));
                       }
                       return m;
                     }});
  e.facts.push_back({"levi_at_north_pole", KnownFact::Relation::Greater, 0.0, 0.0,
                     [rho, z0, v0, rw] { return levi_at(rho, CPoint{z0, cd(0.0, v0 + rw)}); }});
  return e;
}

RootCheck no_extra_flat_root_check(const CatalogEntry& entry) {
  if (entry.name != "exp_flat") throw ParamError("root check applies to exp_flat entries only");
  auto g = [](double t) { return -t - 1.0 + 2.0 * std::exp(t); };
  RootCheck rc;
  rc.t_star = -std::log(2.0);
  rc.min_value = g(rc.t_star);
  rc.grid_min = std::numeric_limits<double>::infinity();
  const int n = 500000;
  for (int i = 0; i < n; ++i) {
    const double t = -50.0 + 50.0 * i / n;
    const double v = g(t);
    if (v < rc.grid_min) {
      rc.grid_min = v;
      rc.grid_argmin = t;
    }
  }
  rc.value_at_zero = g(-1e-12);
  rc.value_at_left = g(-50.0);
  rc.no_root = rc.min_value > 0.0 && rc.grid_min > 0.0;
  return rc;
}

// ---------------------------------------------------------------- Behrens hypersurface

ScalarField behrens_field() {
  return expr_field("behrens", Region::everywhere(),
                    [](const auto& z, const auto& w) { return behrens_rho(z, w); });
}

CatalogEntry make_behrens() {
  CatalogEntry e;
  e.name = "behrens";
  e.spec = "behrens";
  e.description = "hypersurface v + R(z, u) = 0, pseudoconvex from below near the origin";
  e.rho = DefiningFunction(behrens_field(), Region::box({-1, -1, -1, -1}, {1, 1, 1, 1}), "behrens");
  // The hypersurface is a graph over (z, u): seeds are exact boundary points.
  e.rho.seeder = [](std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CPoint> pts(n);
    for (auto& p : pts) {
      const double x = rng.uniform(-0.5, 0.5), y = rng.uniform(-0.5, 0.5), u = rng.uniform(-0.5, 0.5);
      const Cplx<double> z{x, y};
      p = CPoint{cd(x, y), cd(u, -behrens_R(z, u))};
    }
    return pts;
  };
  const DefiningFunction rho = e.rho;
  e.facts.push_back({"rho_at_origin", KnownFact::Relation::Equal, 0.0, 0.0,
                     [rho] { return rho(CPoint{0.0, 0.0}); }});
  e.facts.push_back({"levi_at_origin", KnownFact::Relation::Equal, 0.0, 1e-15,
                     [rho] { return levi_at(rho, CPoint{0.0, 0.0}); }});
  e.facts.push_back({"tau_hat", KnownFact::Relation::Greater, 0.0, 0.0,
                     [] { return behrens_tau().tau_hat; }});
  return e;
}

TauScan behrens_tau_scan(std::size_t n_directions, double r_min, double r_max, std::size_t n_radii) {
  if (!(r_min > 0.0 && r_max > r_min && n_radii >= 2 && n_directions > 0))
    throw ParamError("bad tau scan parameters");
  const DefiningFunction rho(behrens_field(), Region::everywhere(), "behrens");
  const auto dirs = sphere2(n_directions);
  std::vector<double> radii(n_radii);
  const double q = std::pow(r_max / r_min, 1.0 / static_cast<double>(n_radii - 1));
  for (std::size_t k = 0; k < n_radii; ++k) radii[k] = r_min * std::pow(q, static_cast<double>(k));
  std::vector<std::size_t> first_fail(dirs.size(), n_radii);
  std::vector<std::vector<double>> levi(dirs.size(), std::vector<double>(n_radii, 0.0));
  parallel_for(dirs.size(), [&](std::size_t i) {
    for (std::size_t k = 0; k < n_radii; ++k) {
      const double r = radii[k];
      const Cplx<double> z{r * dirs[i][0], r * dirs[i][1]};
      const double u = r * dirs[i][2];
      const CPoint p{cd(z.re, z.im), cd(u, -behrens_R(z, u))};
      levi[i][k] = levi_from_jet(jet2(rho.field, p)).normalized;
      if (!(levi[i][k] > 0.0)) {
        first_fail[i] = k;
        break;
      }
    }
  });
  const std::size_t kmax = *std::min_element(first_fail.begin(), first_fail.end());
  TauScan ts;
  ts.r_min = r_min;
  ts.r_max = r_max;
  ts.resolution = q - 1.0;
  ts.n_directions = dirs.size();
  ts.tau_hat = kmax == 0 ? 0.0 : radii[kmax - 1];
  ts.n_points = dirs.size() * kmax;
  ts.min_levi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t k = 0; k < kmax; ++k) ts.min_levi = std::min(ts.min_levi, levi[i][k]);
  return ts;
}

const TauScan& behrens_tau() {
  static const TauScan ts = behrens_tau_scan();
  return ts;
}

// ---------------------------------------------------------------- glued domain

namespace {

struct GluedParts {
  GluedParams p;
  RiseProfile rise;
  ClampProfile clamp;
  double kappa;

  explicit GluedParts(const GluedParams& gp)
      : p(gp), rise(gp.eps0), clamp(std::pow(gp.delta, gp.eta)), kappa(gp.kappa_rel * gp.delta) {}

  template <class T>
  T T_of(const Cplx<T>& z, const Cplx<T>& w) const {
    return exp_flat_T(z, w, p.a, p.z0, p.v0);
  }

  template <class T>
  T rho(const Cplx<T>& z, const Cplx<T>& w) const {
    const T h = behrens_rho(z, w);
    const T g = h * pow(h * h + kappa * kappa, 0.5 * (p.eta - 1.0));
    return p.K * lift(rise, T_of(z, w)) + lift(clamp, g);
  }
};

void validate(const GluedParams& p) {
  if (!(p.K > 2.0)) throw ParamError("glued domain needs K > 2");
  if (!(p.eta > 0.0 && p.eta < 1.0)) throw ParamError("glued domain needs eta in (0, 1)");
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw ParamError("glued domain needs delta in (0, 1)");
  if (!(p.a > 0.0)) throw ParamError("glued domain needs a > 0");
  if (!(p.eps0 > 0.0 && p.eps0 < 0.5)) throw ParamError("glued domain needs eps0 in (0, 1/2)");
  if (!(p.kappa_rel > 0.0)) throw ParamError("glued domain needs kappa_rel > 0");
}

double T_point(const GluedParams& p, const CPoint& q) {
  return exp_flat_T(Cplx<double>{q.z.real(), q.z.imag()}, Cplx<double>{q.w.real(), q.w.imag()}, p.a,
                    p.z0, p.v0);
}

double rhoH_point(const CPoint& q) {
  return behrens_rho(Cplx<double>{q.z.real(), q.z.imag()}, Cplx<double>{q.w.real(), q.w.imag()});
}

/// Radius |z - z0| on the level set T = b at |w - i v0| = s (negative when empty).
double level_z_radius(const GluedParams& p, double b, double s) {
  const double rest = b - 2.0 * flat_exp(s * s);
  return rest < 0.0 ? -1.0 : std::sqrt(rest / p.a);
}

/// |w - i v0| of the north pole of T < b.
double level_w_radius(double b) { return 1.0 / std::sqrt(std::log(2.0) - std::log(b)); }

}  // namespace

int glued_piece_count(const GluedParams& p, const CPoint& q) {
  const double T = T_point(p, q), h = rhoH_point(q);
  const bool b1 = T < 1.0 - p.eps0;
  const bool b2 = h < -p.delta;
  const bool b3 = T >= 1.0 - p.eps0 && h > -p.delta;
  return int(b1) + int(b2) + int(b3);
}

int glued_piece(const GluedParams& p, const CPoint& q) {
  const double T = T_point(p, q), h = rhoH_point(q);
  if (T < 1.0 - p.eps0) return 1;
  if (h < -p.delta) return 2;
  if (h > -p.delta) return 3;
  return 0;
}

PlacementReport check_placement(const GluedParams& gp, double tau_hat) {
  validate(gp);
  PlacementReport rep;
  rep.params = gp;
  rep.tau_hat = tau_hat;
  const CPoint origin{0.0, 0.0};
  rep.origin_T = T_point(gp, origin);
  rep.origin_in_B1 = rep.origin_T < 1.0 - gp.eps0;
  if (!rep.origin_in_B1) rep.failures.push_back("origin not in B1 (T(0) >= 1 - eps0)");

  const RiseProfile rise(gp.eps0);
  rep.level_ok = gp.K * rise.t0() - std::pow(gp.delta, gp.eta) > 0.0;
  if (!rep.level_ok) rep.failures.push_back("K t0 - delta^eta <= 0");

  // H meets the level sets T = b, b in [1 - eps0, 1 + eps0]: inside the tau ball, transversally.
  const int nphi = 24, nth = 48, ns = 400;
  std::vector<double> bs;
  for (int k = 0; k <= 4; ++k) bs.push_back(1.0 - gp.eps0 + 0.5 * gp.eps0 * k);
  rep.min_transversality = 1.0;
  const ScalarField Tf = expr_field("T", Region::everywhere(), [gp](const auto& z, const auto& w) {
    return exp_flat_T(z, w, gp.a, gp.z0, gp.v0);
  });
  const ScalarField Hf = behrens_field();
  for (double b : bs) {
    const double smax = level_w_radius(b);
    for (int ip = 0; ip < nphi; ++ip) {
      const cd ez = std::polar(1.0, 2.0 * kPi * ip / nphi);
      for (int it = 0; it < nth; ++it) {
        const cd ew = std::polar(1.0, 2.0 * kPi * (it + 0.5) / nth);
        auto point = [&](double s) {
          const double rz = std::max(0.0, level_z_radius(gp, b, s));
          return CPoint{gp.z0 + rz * ez, cd(0.0, gp.v0) + s * ew};
        };
        auto h = [&](double s) { return rhoH_point(point(s)); };
        double prev = h(0.0);
        for (int k = 1; k <= ns; ++k) {
          const double s0 = smax * (k - 1) / ns, s1 = smax * k / ns;
          const double cur = h(s1);
          if ((prev < 0.0) != (cur < 0.0)) {
            const double sr = bisect_root(h, s0, s1);
            const CPoint q = point(sr);
            ++rep.n_intersection;
            rep.max_intersection_radius = std::max(rep.max_intersection_radius, q.norm());
            const Vec4 gT = value_gradient(Tf, q).grad;
            const Vec4 gH = value_gradient(Hf, q).grad;
            const double c = dot(gT, gH) / (norm(gT) * norm(gH));
            rep.min_transversality = std::min(rep.min_transversality, std::sqrt(std::max(0.0, 1.0 - c * c)));
          }
          prev = cur;
        }
      }
    }
  }
  if (rep.n_intersection == 0) {
    rep.failures.push_back("H does not meet the level sets");
    rep.min_transversality = 0.0;
  }
  if (rep.max_intersection_radius > tau_hat)
    rep.failures.push_back("intersection leaves the scanned pseudoconvex ball (" +
                           num(rep.max_intersection_radius) + " > " + num(tau_hat) + ")");
  if (rep.min_transversality < 1e-3) rep.failures.push_back("intersection not transversal");

  // Omega^-_{a,1}: the domain T < 1 minus a ball around the north pole of radius below half
  // the distance to the flat circle.
  const double sN = level_w_radius(1.0);
  const CPoint north{gp.z0, cd(0.0, gp.v0 + sN)};
  const double dist_NF = std::sqrt(1.0 / gp.a + sN * sN);
  rep.eps_ball = 0.45 * dist_NF;
  rep.max_rhoH_outside_cap = -std::numeric_limits<double>::infinity();
  const std::size_t n = 40000;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = sN * halton(i + 1, 2);
    const double th = 2.0 * kPi * halton(i + 1, 3);
    const double fr = std::sqrt(halton(i + 1, 5));
    const double ph = 2.0 * kPi * halton(i + 1, 7);
    const double rz = level_z_radius(gp, 1.0, s);
    if (rz < 0.0) continue;
    for (double f : {fr, 1.0}) {
      const CPoint q{gp.z0 + f * rz * std::polar(1.0, ph), cd(0.0, gp.v0) + s * std::polar(1.0, th)};
      if (distance(q, north) <= rep.eps_ball) continue;
      rep.max_rhoH_outside_cap = std::max(rep.max_rhoH_outside_cap, rhoH_point(q));
    }
  }
  if (!(rep.max_rhoH_outside_cap < -gp.delta))
    rep.failures.push_back("Omega^- not inside {rho_H < -delta} (max rho_H " +
                           num(rep.max_rhoH_outside_cap) + ")");
  rep.ok = rep.failures.empty();
  return rep;
}

PlacementSearch search_placement(double tau_hat) {
  PlacementSearch out;
  for (double eps0 : {0.25, 0.1, 0.05, 0.02, 0.01}) {
    for (double a : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
      for (double delta : {1e-2, 1e-3, 1e-4}) {
        GluedParams gp;
        gp.eps0 = eps0;
        gp.a = a;
        gp.delta = delta;
        // T(0) = 1 - 1.5 eps0 puts the origin inside B1 with margin.
        gp.v0 = -1.0 / std::sqrt(std::log(2.0 / (1.0 - 1.5 * eps0)));
        PlacementReport rep = check_placement(gp, tau_hat);
        out.log.push_back(rep);
        if (rep.ok) {
          out.chosen = gp;
          out.report = rep;
          out.found = true;
          return out;
        }
      }
    }
  }
  return out;
}

const PlacementSearch& default_placement() {
  static const PlacementSearch s = search_placement(behrens_tau().tau_hat);
  return s;
}

CatalogEntry make_glued(const GluedParams& gp) {
  validate(gp);
  const PlacementReport pr = check_placement(gp, behrens_tau().tau_hat);
  if (!pr.ok) {
    std::string msg = "glued placement rejected:";
    for (const auto& f : pr.failures) msg += " " + f + ";";
    throw PlacementError(msg);
  }
  auto parts = std::make_shared<GluedParts>(gp);
  auto f = expr_field("glued", Region::everywhere(),
                      [parts](const auto& z, const auto& w) { return parts->rho(z, w); });
  const double b2 = parts->rise.inverse(std::pow(gp.delta, gp.eta) / gp.K);
  const double mz = 1.05 * std::sqrt((1.0 + gp.eps0) / gp.a);
  const double mw = 1.05 * level_w_radius(1.0 + gp.eps0);
  const Region box = Region::box({gp.z0.real() - mz, gp.z0.imag() - mz, -mw, gp.v0 - mw},
                                 {gp.z0.real() + mz, gp.z0.imag() + mz, mw, gp.v0 + mw});
  CatalogEntry e;
  e.name = "glued";
  e.spec = "glued:K=" + num(gp.K) + ",eta=" + num(gp.eta) + ",delta=" + num(gp.delta) +
           ",a=" + num(gp.a) + ",x0=" + num(gp.z0.real()) + ",y0=" + num(gp.z0.imag()) +
           ",v0=" + num(gp.v0) + ",eps0=" + num(gp.eps0) + ",kappa_rel=" + num(gp.kappa_rel);
  e.description = "K chi1(T) + chi2(-(-rho_H)^eta): exponentially flat piece glued to the Behrens piece";
  e.rho = DefiningFunction(f, box, "glued");
  e.params = {{"K", gp.K},       {"eta", gp.eta},   {"delta", gp.delta},
              {"a", gp.a},       {"x0", gp.z0.real()}, {"y0", gp.z0.imag()},
              {"v0", gp.v0},     {"eps0", gp.eps0}, {"kappa_rel", gp.kappa_rel},
              {"t0", parts->rise.t0()}, {"b2_level", b2}};
  // Seeds on the level set T = b2 and on the Behrens cap around the origin.
  e.rho.seeder = [gp, b2](std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CPoint> pts(n);
    const double smax = level_w_radius(b2);
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 10 == 9) {
        const double x = rng.uniform(-0.3, 0.3), y = rng.uniform(-0.3, 0.3), u = rng.uniform(-0.3, 0.3);
        pts[i] = CPoint{cd(x, y), cd(u, -behrens_R(Cplx<double>{x, y}, u))};
      } else {
        // |w - i v0| with density favouring the equator and the poles alike.
        const double s = smax * std::sqrt(rng.uniform());
        const double th = 2.0 * kPi * rng.uniform(), ph = 2.0 * kPi * rng.uniform();
        const double rz = std::max(0.0, level_z_radius(gp, b2, s));
        pts[i] = CPoint{gp.z0 + rz * std::polar(1.0, ph), cd(0.0, gp.v0) + s * std::polar(1.0, th)};
      }
    }
    return pts;
  };
  const DefiningFunction rho = e.rho;
  const CPoint circ{gp.z0 + std::sqrt(b2 / gp.a), cd(0.0, gp.v0)};
  e.facts.push_back({"rho_on_flat_circle", KnownFact::Relation::Equal, 0.0, 1e-12,
                     [rho, circ] { return rho(circ); }});
  e.facts.push_back({"levi_on_flat_circle", KnownFact::Relation::Equal, 0.0, 1e-9,
                     [rho, circ] { return levi_at(rho, circ); }});
  e.facts.push_back({"rho_at_origin", KnownFact::Relation::Equal, 0.0, 1e-15,
                     [rho] { return rho(CPoint{0.0, 0.0}); }});
  e.facts.push_back({"levi_at_origin", KnownFact::Relation::Equal, 0.0, 1e-12,
                     [rho] { return levi_at(rho, CPoint{0.0, 0.0}); }});
  e.facts.push_back({"min_boundary_gradient", KnownFact::Relation::Greater, 0.0, 0.0,
                     [rho] { return boundary_sample(rho, 2000, 3).min_grad_norm; }});
  e.facts.push_back({"partition_violations", KnownFact::Relation::Equal, 0.0, 0.0, [rho, gp] {
                       const auto bs = boundary_sample(rho, 2000, 5);
                       double bad = 0;
                       for (const auto& q : bs.points) bad += glued_piece_count(gp, q) != 1;
                       return bad;
                     }});
  return e;
}

CatalogEntry make_glued() {
  const PlacementSearch& s = default_placement();
  if (!s.found) throw PlacementError("no glued placement passed the checks");
  return make_glued(s.chosen);
}

// ---------------------------------------------------------------- worm domain

namespace {

struct WormParts {
  double beta, a, C;

  explicit WormParts(double b)
      : beta(b), a(b - kPi / 2.0), C(2.0 / ((kPi / 2.0) * std::exp(-2.0 / kPi))) {}

  template <class T>
  T g(const T& s) const {
    return s * flat_exp(s);
  }
  template <class T>
  T phi(const T& t) const {
    return C * (g(t - a) + g(-t - a));
  }
  template <class T>
  T rho(const Cplx<T>& z, const Cplx<T>& w) const {
    const T t = log(abs2(w));
    const Cplx<T> e{cos(t), sin(t)};
    return abs2(z + e) - 1.0 + phi(t);
  }
  /// Largest t with phi(t) < 1.
  double t_max() const {
    return bisect_root([this](double t) { return phi(t) - 1.0; }, a, beta);
  }
};

}  // namespace

double worm_bound(double beta) { return kPi / (2.0 * beta - kPi); }

CatalogEntry make_worm(double beta) {
  if (!(beta > kPi / 2.0)) throw ParamError("worm needs beta > pi/2");
  auto parts = std::make_shared<WormParts>(beta);
  Region reg = Region::everywhere();
  reg.excluded = [](const CPoint& p) { return std::abs(p.w) < 1e-12; };
  reg.excluded_desc = "w = 0";
  auto f = expr_field("worm", reg, [parts](const auto& z, const auto& w) { return parts->rho(z, w); });
  const double tm = parts->t_max();
  const double mw = 1.05 * std::exp(tm / 2.0);
  Region box = Region::box({-2.1, -2.1, -mw, -mw}, {2.1, 2.1, mw, mw});
  box.excluded = reg.excluded;
  box.excluded_desc = reg.excluded_desc;
  CatalogEntry e;
  e.name = "worm";
  e.spec = "worm:beta=" + num(beta);
  e.description = "worm domain |z + e^{i log|w|^2}|^2 < 1 - phi(log|w|^2)";
  e.provenance = "external";
  e.rho = DefiningFunction(f, box, "worm");
  e.params = {{"beta", beta}, {"a", parts->a}, {"phi_scale", parts->C}, {"t_max", tm}};
  // Exact boundary points from z = -e^{it} + sqrt(1 - phi(t)) e^{i alpha}, |w|^2 = e^t.
  e.rho.seeder = [parts, tm](std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CPoint> pts(n);
    for (auto& p : pts) {
      const double t = rng.uniform(-tm, tm);
      const double al = 2.0 * kPi * rng.uniform(), th = 2.0 * kPi * rng.uniform();
      const double r = std::sqrt(std::max(0.0, 1.0 - parts->phi(t)));
      p = CPoint{-std::polar(1.0, t) + std::polar(r, al), std::polar(std::exp(t / 2.0), th)};
    }
    return pts;
  };
  const DefiningFunction rho = e.rho;
  e.facts.push_back({"rho_on_flat_annulus", KnownFact::Relation::Equal, 0.0, 1e-15,
                     [rho] { return rho(CPoint{0.0, 1.0}); }});
  e.facts.push_back({"levi_on_flat_annulus", KnownFact::Relation::Equal, 0.0, 1e-12, [rho, parts] {
                       double m = 0.0;
                       for (int k = -4; k <= 4; ++k) {
                         const double t = parts->a * k / 5.0;
                         m = std::max(m, std::abs(levi_at(rho, CPoint{0.0, std::polar(std::exp(t / 2), 0.3 * k)})));
                       }
                       return m;
                     }});
  const double bound = std::min(1.0, worm_bound(beta));
  e.facts.push_back({"df_exponent_below_bound", KnownFact::Relation::Less, bound + 0.05, 0.0, [rho] {
                       CollarSpec cs;
                       return estimate_exponent(rho, cs).eta_hat;
                     }});
  return e;
}

// ---------------------------------------------------------------- registry

std::vector<std::string> catalog_names() {
  return {"ball", "ellipsoid", "exp_flat", "behrens", "glued", "worm"};
}

CatalogEntry make_entry(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParamError("expected key=value in '" + item + "'");
      const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(val, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != val.size() || val.empty()) throw ParamError("not a number: '" + val + "'");
      kv[key] = x;
    }
  }
  auto take = [&](const std::string& key, double def) {
    auto it = kv.find(key);
    if (it == kv.end()) return def;
    const double v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&](CatalogEntry e) {
    if (!kv.empty()) throw ParamError("unknown parameter '" + kv.begin()->first + "' for " + name);
    return e;
  };
  if (name == "ball") return finish(make_ball());
  if (name == "ellipsoid") {
    const double a = take("a", 1.0), b = take("b", 1.0);
    return finish(make_ellipsoid(a, b));
  }
  if (name == "exp_flat") {
    const double a = take("a", 1.0), b = take("b", 1.0);
    const double x0 = take("x0", 0.0), y0 = take("y0", 0.0), v0 = take("v0", 0.0);
    return finish(make_exp_flat(a, b, cd(x0, y0), v0));
  }
  if (name == "behrens") return finish(make_behrens());
  if (name == "worm") return finish(make_worm(take("beta", 1.5 * kPi)));
  if (name == "glued") {
    if (kv.empty()) return make_glued();
    const PlacementSearch& s = default_placement();
    GluedParams gp = s.found ? s.chosen : GluedParams{};
    gp.K = take("K", gp.K);
    gp.eta = take("eta", gp.eta);
    gp.delta = take("delta", gp.delta);
    gp.a = take("a", gp.a);
    const double x0 = take("x0", gp.z0.real()), y0 = take("y0", gp.z0.imag());
    gp.z0 = cd(x0, y0);
    gp.v0 = take("v0", gp.v0);
    gp.eps0 = take("eps0", gp.eps0);
    gp.kappa_rel = take("kappa_rel", gp.kappa_rel);
    if (!kv.empty()) throw ParamError("unknown parameter '" + kv.begin()->first + "' for glued");
    return make_glued(gp);
  }
  throw ParamError("unknown domain '" + name + "'");
}

SelftestReport selftest(const CatalogEntry& e, std::uint64_t seed, std::size_t n_points) {
  SelftestReport rep;
  rep.name = e.spec;
  for (const auto& f : e.facts) rep.facts.push_back(evaluate_fact(f));
  Rng rng(seed);
  const Region& box = e.rho.bbox;
  std::vector<CPoint> pts;
  while (pts.size() < n_points) {
    Vec4 x;
    for (int k = 0; k < 4; ++k) x[k] = rng.uniform(box.lo[k], box.hi[k]);
    const CPoint p = CPoint::from_real(x);
    if (box.excluded && box.excluded(p)) continue;
    pts.push_back(p);
  }
  DiffScheme ex, nu;
  ex.mode = DiffScheme::Mode::Exact;
  nu.mode = DiffScheme::Mode::Numeric;
  std::vector<double> disc(pts.size(), 0.0);
  parallel_for(pts.size(), [&](std::size_t i) {
    const Jet2 a = jet2(e.rho.field, pts[i], ex);
    // Steep transition layers need smaller steps; the step is refined until the Richardson
    // levels agree.
    Jet2 b;
    for (double h : {1e-3, 1e-4, 1e-5}) {
      DiffScheme s = nu;
      s.base_step = h;
      try {
        b = jet2(e.rho.field, pts[i], s);
        break;
      } catch (const NumericalError&) {
        if (h == 1e-5) throw;
      }
    }
    const cd da[] = {a.val, a.dz, a.dw, a.dzzb, a.dzwb, a.dwzb, a.dwwb, a.dzz, a.dzw, a.dww};
    const cd db[] = {b.val, b.dz, b.dw, b.dzzb, b.dzwb, b.dwzb, b.dwwb, b.dzz, b.dzw, b.dww};
    double scale = 1.0, m = 0.0;
    for (int k = 0; k < 10; ++k) scale = std::max(scale, std::abs(da[k]));
    for (int k = 0; k < 10; ++k) m = std::max(m, std::abs(da[k] - db[k]));
    disc[i] = m / scale;
  });
  rep.n_points = pts.size();
  for (double d : disc) rep.max_jet_discrepancy = std::max(rep.max_jet_discrepancy, d);
  rep.pass = rep.max_jet_discrepancy <= rep.jet_tol;
  for (const auto& f : rep.facts) rep.pass = rep.pass && f.pass;
  return rep;
}

}  // namespace dfforge
