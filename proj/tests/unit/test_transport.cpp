#include <gtest/gtest.h>

#include "dfforge/catalog.hpp"
#include "dfforge/transport.hpp"
#include "dfforge/verify.hpp"

using namespace dfforge;

namespace {

// L u at q computed from the jet of u and the frame of rho.
cd apply_L(const ScalarField& u, const DefiningFunction& rho, const CPoint& q) {
  return along(frame(rho, q).L, jet2(u, q));
}

}  // namespace

TEST(Transport, SolutionVanishesOnTheCurveAndSolvesTheEquation) {
  const CatalogEntry e = make_entry("exp_flat");
  const DefiningFunction rho = perturbed(e.rho, 0.1, 'w');
  const Curve c = flat_circle(e);
  for (const ComplexFn& h : {obstruction_rhs_fn(rho), ComplexFn([](const CPoint&) { return cd(1.0, 0.0); }),
                             ComplexFn([](const CPoint& q) { return cd(q.z.real(), -2.0 * q.z.imag()); })}) {
    const TransportSolution s = solve_on_curve(c, rho, h);
    EXPECT_TRUE(s.ok);
    EXPECT_LE(s.max_residual, 1e-5);
    EXPECT_EQ(s.max_abs_u_on_curve, 0.0);
    for (std::size_t i = 0; i < s.gamma.size(); i += 8) {
      const CPoint& q = s.gamma.points[i];
      EXPECT_NEAR(std::abs(apply_L(s.u, rho, q) - h(q)), 0.0, 1e-5);
    }
  }
}

TEST(Transport, ObstructionVanishesOnTheUnperturbedCircle) {
  const CatalogEntry e = make_entry("exp_flat");
  for (const auto& q : flat_circle(e).sample(16).points) EXPECT_NEAR(std::abs(obstruction_rhs(e.rho, q)), 0.0, 1e-12);
}

TEST(Transport, GradNormalizationDiffersByAPositiveFactor) {
  const CatalogEntry e = make_entry("exp_flat");
  const DefiningFunction rho = perturbed(e.rho, 0.1, 'w');
  for (const auto& q : flat_circle(e).sample(8).points) {
    const cd a = obstruction_rhs(rho, q, RhsNormalization::NbarDelta);
    const cd b = obstruction_rhs(rho, q, RhsNormalization::GradNorm);
    ASSERT_GT(std::abs(b), 0.0);
    const cd ratio = a / b;
    EXPECT_NEAR(ratio.imag(), 0.0, 1e-9);
    EXPECT_GT(ratio.real(), 0.0);
  }
}

TEST(Correction, RemovesHessLNAndIsIndependentOfTheTube) {
  const CatalogEntry e = make_entry("exp_flat");
  const DefiningFunction rho = perturbed(e.rho, 0.1, 'w');
  const Curve c = flat_circle(e);
  const CorrectedDefining a = corrected_defining(rho, c);
  const CorrectedDefining b = corrected_defining(rho, c, CutoffSpec{0.2, 0.4});
  EXPECT_TRUE(a.ok);
  EXPECT_TRUE(b.ok);
  EXPECT_GE(a.max_before, 1e-2);
  EXPECT_LE(a.max_after, 1e-5);
  EXPECT_LE(b.max_after, 1e-5);
  // Phi = u on the inner tube, whatever the radii.
  for (const auto& q : c.sample(16).points) {
    const CPoint near(q.z * 1.05, q.w + cd(0.03, 0.02));
    EXPECT_NEAR(a.Phi(near), b.Phi(near), 1e-12);
  }
}

TEST(Correction, CutoffIsSupportedInTheOuterTube) {
  const CatalogEntry e = make_entry("exp_flat");
  const DefiningFunction rho = perturbed(e.rho, 0.1, 'w');
  const CorrectedDefining a = corrected_defining(rho, flat_circle(e), CutoffSpec{0.2, 0.4});
  for (const CPoint& far : {CPoint(0.0, 0.0), CPoint(cd(1.5, 0.0), cd(0.0, 0.1)), CPoint(cd(0.0, 0.5), cd(0.3, 0.3))}) {
    EXPECT_EQ(a.Phi(far), 0.0);
    EXPECT_EQ(a.corrected(far), rho(far));
  }
  EXPECT_EQ(radial_plateau(0.1, 0.2, 0.4), 1.0);
  EXPECT_EQ(radial_plateau(0.5, 0.2, 0.4), 0.0);
  const double m = radial_plateau(0.3, 0.2, 0.4);
  EXPECT_GT(m, 0.0);
  EXPECT_LT(m, 1.0);
}

TEST(Correction, RejectsBadTubes) {
  const CatalogEntry e = make_entry("exp_flat");
  EXPECT_THROW(corrected_defining(e.rho, flat_circle(e), CutoffSpec{0.5, 0.3}), TubeError);
  EXPECT_THROW(corrected_defining(e.rho, flat_circle(e), CutoffSpec{0.5, 5.0}), TubeError);
}

TEST(Transport, RejectsNonTransversalCurves) {
  const Curve c("complex_tangent", [](double t) { return Vec4{std::cos(t), 0.0, std::sin(t), 0.0}; },
                [](double t) { return Vec4{-std::sin(t), 0.0, std::cos(t), 0.0}; }, 0.0,
                2.0 * std::numbers::pi, true);
  EXPECT_THROW(solve_on_curve(c, make_entry("ball").rho, [](const CPoint&) { return cd(1.0, 0.0); }),
               TransversalityError);
}

TEST(Perturbation, ZMultiplierIsInertOnTheCircle) {
  const CatalogEntry e = make_entry("exp_flat");
  const auto g = flat_circle(e).sample(32);
  const auto hz = hess_LN_on_curve(perturbed(e.rho, 0.1, 'z'), g);
  const auto hw = hess_LN_on_curve(perturbed(e.rho, 0.1, 'w'), g);
  EXPECT_LE(*std::max_element(hz.begin(), hz.end()), 1e-12);
  EXPECT_GE(*std::max_element(hw.begin(), hw.end()), 1e-2);
}
