#include <gtest/gtest.h>

#include "dfforge/catalog.hpp"
#include "dfforge/hessian_frame.hpp"
#include "dfforge/verify.hpp"

using namespace dfforge;

namespace {

// Smallest eigenvalue of the Hessian block of -(-rho)^eta divided by eta (-rho)^{eta-2},
// assembled directly from the jet.
double oracle_min_eig(const Jet2& j, double eta) {
  const double m = -j.val, s = 1.0 - eta;
  const double a = m * j.dzzb.real() + s * std::norm(j.dz);
  const double d = m * j.dwwb.real() + s * std::norm(j.dw);
  const cd b = m * j.dzwb + s * j.dz * std::conj(j.dw);
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
}

// Largest grid eta with a psd block, scanning down from 1.
double oracle_eta_max(const Jet2& j, int steps) {
  for (int k = steps; k >= 0; --k) {
    const double eta = static_cast<double>(k) / steps;
    if (oracle_min_eig(j, eta) >= 0.0) return eta;
  }
  return 0.0;
}

std::vector<std::pair<std::string, CPoint>> sample_points() {
  std::vector<std::pair<std::string, CPoint>> out;
  for (const char* spec : {"ball", "ellipsoid:a=3,b=1", "exp_flat", "worm", "behrens"}) {
    const CatalogEntry e = make_entry(spec);
    for (const auto& p : interior_points(e.rho, 40, 17, 1e-6)) out.emplace_back(spec, p);
  }
  return out;
}

}  // namespace

TEST(Pencil, ClosedFormMatchesBruteForceScan) {
  const int steps = 20000;
  for (const auto& [spec, p] : sample_points()) {
    const CatalogEntry e = make_entry(spec);
    const Jet2 j = jet2(e.rho.field, p);
    const Pencil pc = Pencil::from_jet(j);
    for (double eta : {0.0, 0.3, 0.7, 1.0})
      EXPECT_NEAR(pc.min_eig(eta), oracle_min_eig(j, eta), 1e-10 * (1.0 + std::abs(oracle_min_eig(j, eta))));
    const double em = pc.eta_max();
    const double brute = oracle_eta_max(j, steps);
    EXPECT_GE(em, brute - 1e-12) << spec;
    EXPECT_LE(em, brute + 1.0 / steps + 1e-12) << spec;
  }
}

TEST(Pencil, MinEigIsNonincreasingInEta) {
  for (const auto& [spec, p] : sample_points()) {
    const Pencil pc = Pencil::from_jet(jet2(make_entry(spec).rho.field, p));
    double prev = pc.min_eig(0.0);
    for (int k = 1; k <= 50; ++k) {
      const double cur = pc.min_eig(k / 50.0);
      EXPECT_LE(cur, prev + 1e-12) << spec;
      prev = cur;
    }
  }
}

TEST(Pencil, BallThresholdIsCappedAtOne) {
  const CatalogEntry e = make_entry("ball");
  for (const auto& p : interior_points(e.rho, 50, 3, 1e-3)) EXPECT_EQ(psd_eta_max(e.rho, p), 1.0);
  EXPECT_THROW(psd_eta_max(e.rho, CPoint(cd(2.0, 0.0), 0.0)), InteriorError);
}

TEST(Pencil, ScalingRAgreesWithTheOracle) {
  // Value-level invariance under r -> c r is not claimed; both must agree with the oracle.
  const CatalogEntry e = make_entry("exp_flat");
  const DefiningFunction r3(scaled(e.rho.field, 3.0), e.rho.bbox, "3r");
  for (const auto& p : interior_points(e.rho, 20, 5, 1e-4)) {
    const Jet2 j = jet2(r3.field, p);
    EXPECT_NEAR(psd_eta_max(r3, p), oracle_eta_max(j, 20000), 1.0 / 20000 + 1e-12);
  }
}

TEST(Decomposition, AssembledFormMatchesDirectHessianOnTheBall) {
  IdentityOptions o;
  o.n_points = 30;
  o.n_ab = 16;
  const IdentityCheck c = decomposition_identity_check(make_entry("ball"), o);
  EXPECT_EQ(c.points.size(), 30u);
  EXPECT_LE(c.max_rel_err_exact, 1e-10);
  EXPECT_LE(c.max_rel_err_numeric, 1e-4);
}

TEST(Decomposition, RejectsExteriorPoints) {
  const CatalogEntry e = make_entry("ball");
  EXPECT_THROW(decompose(e.rho.field, constant_field(0.0), 0.5, 0.1, CPoint(cd(1.5, 0.0), 0.0)), DomainError);
}

TEST(Decomposition, ThirdTermBoundHoldsNearTheBallBoundary) {
  const CatalogEntry e = make_entry("ball");
  std::vector<CPoint> pts;
  for (const auto& q : boundary_sample(e.rho, 50, 9).points) pts.push_back(CPoint(0.999 * q.z, 0.999 * q.w));
  const CollarReport r = collar_inequality_check(e.rho.field, constant_field(0.0), 0.5, 0.1, pts);
  EXPECT_TRUE(r.all_III);
  EXPECT_TRUE(r.all_positive);
}
