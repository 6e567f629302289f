#include <gtest/gtest.h>

#include "dfforge/catalog.hpp"
#include "dfforge/curve.hpp"
#include "dfforge/domain.hpp"
#include "dfforge/verify.hpp"

using namespace dfforge;

TEST(Frame, UnitOrthogonalTangentialOnBoundarySamples) {
  for (const char* spec : {"ball", "ellipsoid:a=2,b=0.5", "exp_flat", "behrens", "worm"}) {
    const CatalogEntry e = make_entry(spec);
    const BoundarySample bs = boundary_sample(e.rho, 200, 3);
    ASSERT_GE(bs.points.size(), 100u) << spec;
    for (const auto& q : bs.points) {
      const Frame f = frame(e.rho, q);
      EXPECT_NEAR(cnorm(f.L), 1.0, 1e-10) << spec;
      EXPECT_NEAR(cnorm(f.N), 1.0, 1e-10) << spec;
      EXPECT_NEAR(std::abs(hermitian_dot(f.L, f.N)), 0.0, 1e-10) << spec;
      const Jet2 j = jet2(e.rho.field, q);
      EXPECT_NEAR(std::abs(along(f.L, j)), 0.0, 1e-10 * std::max(1.0, f.grad_norm)) << spec;
    }
  }
}

TEST(Boundary, SamplesSatisfyTheBoundaryTolerance) {
  const CatalogEntry e = make_entry("exp_flat");
  const DomainTolerances tol;
  const BoundarySample bs = boundary_sample(e.rho, 500, 11, tol);
  EXPECT_GT(bs.min_grad_norm, tol.grad_floor);
  for (const auto& q : bs.points) {
    const ValueGrad vg = value_gradient(e.rho.field, q);
    EXPECT_LE(std::abs(vg.val), tol.boundary_tol * norm(vg.grad));
  }
}

TEST(Boundary, ProjectionLandsOnTheSphere) {
  const CatalogEntry e = make_entry("ball");
  const CPoint q = project_to_boundary(e.rho, CPoint(cd(0.3, 0.2), cd(-0.1, 0.5)));
  EXPECT_NEAR(q.norm(), 1.0, 1e-9);
  EXPECT_THROW(frame(e.rho, CPoint(0.0, 0.0)), DegenerateGradient);
}

TEST(Levi, BallIsStrictlyPseudoconvexWithUnitLevi) {
  const CatalogEntry e = make_entry("ball");
  for (const auto& q : boundary_sample(e.rho, 100, 5).points) {
    const LeviForm lf = levi_form(e.rho, q);
    EXPECT_NEAR(lf.normalized, 1.0, 1e-12);
    EXPECT_NEAR(lf.unnormalized, 1.0, 1e-9);  // n = 1 on the unit sphere
  }
}

TEST(Levi, ExpFlatVanishesOnTheUnitCircle) {
  const CatalogEntry e = make_entry("exp_flat");
  for (int k = 0; k < 32; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 32.0;
    const CPoint q(std::polar(1.0, t), 0.0);
    EXPECT_NEAR(levi_form(e.rho, q).normalized, 0.0, 1e-14);
  }
  // Off the circle the boundary is strictly pseudoconvex.
  EXPECT_GT(levi_form(e.rho, CPoint(0.0, cd(0.0, 1.2011224087864498))).normalized, 0.5);
}

TEST(Levi, ScanFindsOneCurveLikeComponentOnExpFlat) {
  const CatalogEntry e = make_entry("exp_flat");
  LeviScanOptions o;
  o.n_samples = 20000;
  const LeviScanReport r = levi_flat_scan(e.rho, o);
  ASSERT_EQ(r.components.size(), 1u);
  EXPECT_EQ(r.components[0].classification, "curve-like");
  EXPECT_NEAR(r.components[0].ring_radius, 1.0, 0.1);
}

TEST(Levi, ScanOfTheBallIsEmpty) {
  LeviScanOptions o;
  o.n_samples = 2000;
  const LeviScanReport r = levi_flat_scan(make_entry("ball").rho, o);
  EXPECT_EQ(r.n_flat, 0u);
  EXPECT_TRUE(r.components.empty());
}

TEST(Transversality, FlatCircleHasUnitSingularValues) {
  const CatalogEntry e = make_entry("exp_flat");
  const CurveSamples g = flat_circle(e).sample(64);
  EXPECT_LE(curve_boundary_defect(g, e.rho), 1e-12);
  const TransversalityReport t = transversality_check(g, e.rho);
  EXPECT_TRUE(t.transversal);
  EXPECT_NEAR(t.min_sigma, 1.0, 1e-9);
}

TEST(Transversality, ComplexTangentCurveIsRejected) {
  // t -> (cos t, sin t) on the unit sphere has tangent -L at every point.
  const Curve c("complex_tangent", [](double t) { return Vec4{std::cos(t), 0.0, std::sin(t), 0.0}; },
                [](double t) { return Vec4{-std::sin(t), 0.0, std::cos(t), 0.0}; }, 0.0,
                2.0 * std::numbers::pi, true);
  const TransversalityReport t = transversality_check(c.sample(32), make_entry("ball").rho);
  EXPECT_FALSE(t.transversal);
  EXPECT_LT(t.min_sigma, 1e-9);
}
