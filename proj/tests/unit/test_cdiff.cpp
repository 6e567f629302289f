#include <gtest/gtest.h>

#include <chrono>

#include "dfforge/cdiff.hpp"
#include "dfforge/field.hpp"
#include "oracle_library.hpp"

using namespace dfforge;
using dfforge::test::OracleCase;
using dfforge::test::oracle_library;
using dfforge::test::oracle_points;
using dfforge::test::jet_rel_error;

namespace {

DiffScheme numeric_scheme() {
  DiffScheme s;
  s.mode = DiffScheme::Mode::Numeric;
  return s;
}

}  // namespace

TEST(OracleLibrary, HasAtLeastTwentyFields) { EXPECT_GE(oracle_library().size(), 20u); }

TEST(OracleLibrary, ExactJetsMatch) {
  for (const auto& c : oracle_library())
    for (const auto& p : oracle_points(c)) {
      const Jet2 j = jet2(c.field, p);
      EXPECT_LE(jet_rel_error(j, c.ref(p)), 1e-12) << c.name << " at " << p.z << ", " << p.w;
    }
}

TEST(OracleLibrary, NumericJetsMatch) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& c : oracle_library())
    for (const auto& p : oracle_points(c)) {
      const Jet2 j = jet2(c.field, p, numeric_scheme());
      EXPECT_LE(jet_rel_error(j, c.ref(p)), 1e-7) << c.name << " at " << p.z << ", " << p.w;
    }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
}

TEST(OracleLibrary, ThirdDerivatives) {
  const std::array<std::array<WDir, 3>, 4> dirs{{{WDir::z, WDir::z, WDir::zb},
                                                 {WDir::w, WDir::w, WDir::wb},
                                                 {WDir::z, WDir::w, WDir::wb},
                                                 {WDir::z, WDir::zb, WDir::wb}}};
  for (const auto& c : oracle_library()) {
    if (!c.third) continue;
    for (const auto& p : oracle_points(c))
      for (const auto& d : dirs) {
        const cd ref = c.third(p, d);
        const double scale = std::max(1.0, std::abs(ref));
        EXPECT_LE(std::abs(third_derivative(c.field, p, d) - ref), 1e-10 * scale) << c.name;
        // One central difference of second-order jets: O(h^2) with h = 1e-3 max(1, |p|).
        EXPECT_LE(std::abs(third_derivative(c.field, p, d, numeric_scheme()) - ref), 1e-4 * scale)
            << c.name << " numeric";
      }
  }
}

TEST(OracleLibrary, QuarticZThirdDerivativeAtOne) {
  const auto f = expr_field("z4", Region::everywhere(), [](const auto& z, const auto&) { return abs2(z) * abs2(z); });
  EXPECT_NEAR(std::abs(third_derivative(f, CPoint(1.0, 0.0), {WDir::z, WDir::z, WDir::zb})), 4.0, 1e-12);
  const auto g = expr_field("re_z2w", Region::everywhere(), [](const auto& z, const auto& w) { return (z * z * w).re; });
  EXPECT_NEAR(std::abs(third_derivative(g, CPoint(cd(0.3, 0.2), cd(-0.4, 0.1)), {WDir::z, WDir::z, WDir::wb})),
              0.0, 1e-14);
}

TEST(Richardson, HalvingTheStepReducesTheError) {
  for (int levels : {0, 1}) {
    double err_h = 0.0, err_h2 = 0.0;
    for (const auto& c : oracle_library())
      for (const auto& p : oracle_points(c)) {
        DiffScheme s = numeric_scheme();
        s.richardson_levels = levels;
        s.consistency_tol = 1e300;
        s.base_step = 4e-2;
        err_h += jet_rel_error(jet2(c.field, p, s), c.ref(p));
        s.base_step = 2e-2;
        err_h2 += jet_rel_error(jet2(c.field, p, s), c.ref(p));
      }
    EXPECT_GE(err_h / err_h2, 2.0) << "levels " << levels;
  }
}

TEST(Hermitian, MixedBlockIsHermitian) {
  for (const auto& c : oracle_library())
    for (const auto& p : oracle_points(c)) {
      EXPECT_LE(jet2(c.field, p).hermitian_defect(), 1e-12) << c.name;
      EXPECT_LE(jet2(c.field, p, numeric_scheme()).hermitian_defect(), 1e-6) << c.name;
    }
}

TEST(Nesting, ProductRuleOfRTimesExpPsi) {
  // Black-box inputs force the composite to difference its inputs.
  const ScalarField r = black_box("r", Region::everywhere(), [](const CPoint& p) {
    return std::norm(p.z) + 2.0 * std::norm(p.w) + std::real(p.z * p.w) - 1.0;
  });
  const ScalarField psi = black_box("psi", Region::everywhere(), [](const CPoint& p) {
    return -0.3 * std::norm(p.z * p.w) + 0.1 * p.w.real();
  });
  const ScalarField rho = times_exp(r, psi);
  DiffScheme s;
  s.mode = DiffScheme::Mode::Expand;
  for (const CPoint& p : {CPoint(cd(0.2, 0.1), cd(-0.3, 0.4)), CPoint(cd(-0.5, 0.2), cd(0.1, -0.2)),
                          CPoint(cd(0.7, -0.1), cd(0.2, 0.2))}) {
    const Jet2 a = jet2(r, p, s), b = jet2(psi, p, s), d = jet2(rho, p, s);
    const double e = std::exp(b.val);
    const cd rz = e * (a.dz + a.val * b.dz);
    const cd rzwb = e * (a.dzwb + a.dz * b.dwb() + b.dz * a.dwb() + a.val * b.dzwb + a.val * b.dz * b.dwb());
    const cd rwwb = e * (a.dwwb + a.dw * b.dwb() + b.dw * a.dwb() + a.val * b.dwwb + a.val * b.dw * b.dwb());
    const double tol = s.tol_nest;
    EXPECT_NEAR(std::abs(d.dz - rz), 0.0, tol);
    EXPECT_NEAR(std::abs(d.dzwb - rzwb), 0.0, tol);
    EXPECT_NEAR(std::abs(d.dwwb - rwwb), 0.0, tol);
  }
}

TEST(Nesting, IdentityCompositionIsBitwiseEqual) {
  const auto f = expr_field("f", Region::everywhere(),
                            [](const auto& z, const auto& w) { return abs2(z) * w.re + exp(w.im); });
  const auto g = compose("id", {f}, [](auto in, const auto&, const auto&) { return in[0]; });
  const CPoint p(cd(0.3, -0.2), cd(0.5, 0.1));
  const Jet2 a = jet2(f, p), b = jet2(g, p);
  EXPECT_EQ(a.val, b.val);
  EXPECT_EQ(a.dz, b.dz);
  EXPECT_EQ(a.dw, b.dw);
  EXPECT_EQ(a.dzzb, b.dzzb);
  EXPECT_EQ(a.dzwb, b.dzwb);
  EXPECT_EQ(a.dwwb, b.dwwb);
  EXPECT_EQ(a.dzz, b.dzz);
}

TEST(Nesting, NegPowerWithEtaOneIsIdentity) {
  const auto ball = expr_field("ball", Region::everywhere(),
                               [](const auto& z, const auto& w) { return abs2(z) + abs2(w) - 1.0; });
  const auto np = neg_power(ball, 1.0);
  const CPoint p(cd(0.3, 0.1), cd(-0.2, 0.4));
  const Jet2 a = jet2(ball, p), b = jet2(np, p);
  EXPECT_NEAR(a.val, b.val, 1e-12);
  EXPECT_NEAR(std::abs(a.dz - b.dz), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(a.dzzb - b.dzzb), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(a.dwwb - b.dwwb), 0.0, 1e-8);
  EXPECT_THROW(jet2(np, CPoint(cd(1.0, 0.0), cd(0.5, 0.0))), DomainError);
}

TEST(Nesting, TrivialWeightLeavesJetsUnchanged) {
  const auto r = expr_field("r", Region::everywhere(),
                            [](const auto& z, const auto& w) { return abs2(z) + (z * w).re - 0.5; });
  const auto rho = times_exp(r, constant_field(0.0));
  const CPoint p(cd(0.1, 0.2), cd(0.3, -0.1));
  const Jet2 a = jet2(r, p), b = jet2(rho, p);
  EXPECT_NEAR(std::abs(a.dz - b.dz), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(a.dzwb - b.dzwb), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(a.dww - b.dww), 0.0, 1e-14);
}

TEST(BlackBox, ReportsNumericAccuracy) {
  const auto f = black_box("bb", Region::everywhere(), [](const CPoint& p) { return std::norm(p.z); });
  EXPECT_FALSE(f.exact());
  const Jet2 j = jet2(f, CPoint(cd(0.5, 0.5), 0.0));
  EXPECT_NEAR(j.dzzb.real(), 1.0, 1e-8);
}
