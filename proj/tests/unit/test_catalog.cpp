#include <gtest/gtest.h>

#include <numbers>

#include "dfforge/catalog.hpp"
#include "dfforge/curve.hpp"
#include "dfforge/smooth.hpp"
#include "dfforge/verify.hpp"

using namespace dfforge;

TEST(Catalog, EveryEntryPassesItsSelftest) {
  for (const auto& name : catalog_names()) {
    const SelftestReport r = selftest(make_entry(name), 1, 50);
    EXPECT_TRUE(r.pass) << name;
    for (const auto& f : r.facts) EXPECT_TRUE(f.pass) << name << " " << f.id << " measured " << f.measured;
    EXPECT_LE(r.max_jet_discrepancy, r.jet_tol) << name;
  }
}

TEST(Catalog, SpecParsing) {
  EXPECT_EQ(make_entry("exp_flat:a=2,b=0.5").params.at("a"), 2.0);
  EXPECT_THROW(make_entry("nope"), ParamError);
  EXPECT_THROW(make_entry("ball:a=1"), ParamError);
  EXPECT_THROW(make_entry("exp_flat:a=x"), ParamError);
  EXPECT_THROW(make_entry("exp_flat:b=3"), ParamError);
  EXPECT_EQ(make_entry(make_entry("exp_flat:a=2").spec).spec, make_entry("exp_flat:a=2").spec);
}

TEST(Catalog, ExpFlatHasNoSecondFlatRoot) {
  const RootCheck r = no_extra_flat_root_check(make_entry("exp_flat"));
  EXPECT_TRUE(r.no_root);
  EXPECT_NEAR(r.min_value, std::log(2.0), 1e-9);
  EXPECT_NEAR(r.t_star, -std::log(2.0), 1e-6);
  EXPECT_THROW(no_extra_flat_root_check(make_entry("ball")), ParamError);
}

TEST(Catalog, WormBound) {
  EXPECT_NEAR(worm_bound(1.5 * std::numbers::pi), 0.5, 1e-15);
  EXPECT_NEAR(worm_bound(std::numbers::pi), 1.0, 1e-15);
}

TEST(Catalog, BehrensStrictlyPseudoconvexShell) {
  const TauScan& t = behrens_tau();
  EXPECT_GT(t.tau_hat, 0.0);
  EXPECT_GT(t.min_levi, 0.0);
}

TEST(Glued, DefaultPlacementPassesAndPartitionIsExact) {
  const PlacementSearch& s = default_placement();
  ASSERT_TRUE(s.found);
  EXPECT_TRUE(s.report.ok);
  const CatalogEntry e = make_entry("glued");
  const GluedParams gp = glued_params(e);
  EXPECT_EQ(gp.eps0, s.chosen.eps0);
  for (const auto& q : boundary_sample(e.rho, 500, 4).points) EXPECT_EQ(glued_piece_count(gp, q), 1);
  EXPECT_THROW(make_glued(GluedParams{}), PlacementError);
}

TEST(Smooth, StepIsMonotoneAndFlatAtTheEnds) {
  EXPECT_EQ(smooth_step(-0.5), 0.0);
  EXPECT_EQ(smooth_step(1.5), 1.0);
  EXPECT_NEAR(smooth_step(0.5), 0.5, 1e-15);
  double prev = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double v = smooth_step(k / 100.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  // Series derivative against a central difference.
  for (double x : {0.1, 0.37, 0.8}) {
    const auto s = smooth_step_series(x, 2);
    const double h = 1e-5;
    EXPECT_NEAR(s[1], (smooth_step(x + h) - smooth_step(x - h)) / (2 * h), 1e-7);
  }
  const auto s0 = smooth_step_series(0.0, 3);
  for (double c : s0) EXPECT_EQ(c, 0.0);
}

TEST(Smooth, RiseProfileFixedPointAndConvexity) {
  const RiseProfile f(0.1);
  EXPECT_NEAR(f.value(f.t0()), f.t0(), 1e-12);
  EXPECT_GT(f.t0(), 0.9);
  EXPECT_LT(f.t0(), 1.1);
  EXPECT_EQ(f.value(0.85), 0.0);
  EXPECT_NEAR(f.value(1.1), 2.2, 1e-12);
  for (double t : {0.95, 1.0, 1.05}) {
    const auto s = f.series(t, 2);
    EXPECT_GT(s[1], 0.0);
    EXPECT_GT(s[2], 0.0);
  }
  EXPECT_NEAR(f.value(f.inverse(0.5)), 0.5, 1e-10);
}

TEST(Smooth, ClampProfileMatchesItsPieces) {
  const ClampProfile g(0.2);
  EXPECT_EQ(g.value(-0.5), -0.2);
  EXPECT_EQ(g.value(0.3), 0.3);
  EXPECT_EQ(g.value(-0.05), -0.05);
  double prev = g.value(-0.2);
  for (int k = 1; k <= 100; ++k) {
    const double v = g.value(-0.2 + 0.1 * k / 100.0);
    EXPECT_GE(v, prev - 1e-15);
    prev = v;
  }
  const double h = 1e-5, t = -0.15;
  EXPECT_NEAR(g.series(t, 1)[1], (g.value(t + h) - g.value(t - h)) / (2 * h), 1e-6);
}

TEST(Curve, NearestAndReachOfACircle) {
  const Curve c = Curve::circle(cd(0.5, 0.0), 2.0, cd(0.0, 1.0));
  for (double t : {0.3, 1.7, 4.0}) {
    const Vec4 p = c.pos(t);
    const Vec4 off = p + Vec4{0.1 * std::cos(t), 0.1 * std::sin(t), 0.05, 0.0};
    EXPECT_NEAR(c.nearest(off), t, 1e-8);
  }
  EXPECT_NEAR(c.reach(), 2.0, 1e-6);
  EXPECT_THROW(c.nearest(Vec4{0.5, 0.0, 0.0, 1.0}), ProjectionAmbiguous);
  const CurveSamples s = c.sample(100);
  EXPECT_EQ(s.size(), 100u);
  EXPECT_NEAR(norm(s.tangents[0]), 1.0, 1e-12);
}

TEST(Curve, InterpolationReproducesSamples) {
  const Curve c = Curve::circle(0.0, 1.0, 0.0);
  const CurveSamples s = c.sample(64);
  const Curve ip = Curve::interpolate(s);
  EXPECT_TRUE(ip.closed());
  for (int k = 0; k < 64; k += 7) {
    const Vec4 a = ip.pos(static_cast<double>(k)), b = s.points[k].real();
    EXPECT_NEAR(norm(a - b), 0.0, 1e-12);
  }
  // Between samples the Catmull-Rom spline stays close to the circle.
  const Vec4 mid = ip.pos(10.5);
  EXPECT_NEAR(std::hypot(mid[0], mid[1]), 1.0, 1e-4);
}

TEST(Verify, CircleDistanceAndData) {
  const CircleData d = flat_circle_data(make_entry("exp_flat:a=4,b=1,x0=0.5"));
  EXPECT_NEAR(d.radius, 0.5, 1e-15);
  EXPECT_EQ(d.center, cd(0.5, 0.0));
  EXPECT_NEAR(distance_to_circle(CPoint(cd(1.5, 0.0), cd(0.0, 0.0)), 0.0, 1.0, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(distance_to_circle(CPoint(0.0, cd(0.0, 0.0)), 0.0, 1.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(distance_to_circle(CPoint(1.0, cd(0.3, 0.4)), 0.0, 1.0, 0.0), 0.5, 1e-15);
  EXPECT_THROW(flat_circle_data(make_entry("ball")), ParamError);
}
