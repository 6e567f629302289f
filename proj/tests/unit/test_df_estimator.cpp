#include <gtest/gtest.h>

#include <algorithm>

#include "dfforge/catalog.hpp"
#include "dfforge/df_estimator.hpp"
#include "dfforge/weight.hpp"

using namespace dfforge;

namespace {

CollarSpec small_collar(std::size_t n = 300) {
  CollarSpec s;
  s.n_boundary = n;
  return s;
}

}  // namespace

TEST(Collar, PointsSitAtTheRequestedDepths) {
  const CatalogEntry e = make_entry("ellipsoid:a=2,b=1");
  const CollarSpec spec = small_collar(100);
  std::size_t skipped = 0;
  const auto pts = collar_points(e.rho, spec, &skipped);
  EXPECT_EQ(skipped, 0u);
  EXPECT_EQ(pts.size(), 100u * spec.depth_exponents.size());
  const double diam = e.rho.bbox.diameter();
  for (const auto& c : pts) {
    EXPECT_LT(e.rho(c.p), 0.0);
    EXPECT_NEAR(c.depth, std::pow(10.0, -spec.depth_exponents[c.depth_level]) * diam, 1e-12 * diam);
    EXPECT_NEAR(distance(c.p, c.base), c.depth, 1e-12);
  }
}

TEST(Estimate, BallIsCappedAtOne) {
  const DFEstimate est = estimate_exponent(make_entry("ball").rho, small_collar());
  EXPECT_EQ(est.eta_hat, 1.0);
  EXPECT_EQ(est.eta_bisect, 1.0);
  EXPECT_TRUE(est.cross_check_ok);
  EXPECT_FALSE(est.fail_witness.has_value());
}

TEST(Estimate, WormStaysBelowTheBound) {
  const CatalogEntry e = make_entry("worm");
  const DFEstimate est = estimate_exponent(e.rho, small_collar(1000));
  EXPECT_LE(est.eta_hat, worm_bound(e.params.at("beta")) + 0.05);
  EXPECT_TRUE(est.cross_check_ok);
  EXPECT_NEAR(est.eta_hat, est.eta_bisect, 1e-4);
  ASSERT_TRUE(est.fail_witness.has_value());
  EXPECT_LT(est.fail_witness->min_eig, 0.0);
}

TEST(Estimate, CollarThresholdsRiseAsTheCollarShrinks) {
  for (const char* spec : {"exp_flat", "worm", "behrens"}) {
    const DFEstimate est = estimate_exponent(make_entry(spec).rho, small_collar());
    const auto& ex = est.spec.depth_exponents;
    std::vector<std::size_t> order(ex.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ex[a] < ex[b]; });
    for (std::size_t k = 1; k < order.size(); ++k)
      EXPECT_GE(est.eta_collar_by_depth[order[k]], est.eta_collar_by_depth[order[k - 1]]) << spec;
    EXPECT_EQ(*std::min_element(est.eta_collar_by_depth.begin(), est.eta_collar_by_depth.end()), est.eta_hat);
    for (std::size_t k = 0; k < ex.size(); ++k) EXPECT_LE(est.eta_collar_by_depth[k], est.eta_by_depth[k]);
  }
}

TEST(Estimate, BindingPointCarriesTheMinimum) {
  const DFEstimate est = estimate_exponent(make_entry("exp_flat").rho, small_collar());
  EXPECT_EQ(est.points[est.binding_index].eta, est.eta_hat);
  for (const auto& c : est.points) EXPECT_GE(c.eta, est.eta_hat);
}

TEST(Index, ArgmaxOverTheFamily) {
  const CatalogEntry e = make_entry("exp_flat");
  const WeightedCandidate wc = build_candidate(e.rho.field, 1.0, 1.0, 0.1);
  const IndexReport idx = estimate_index(
      {{"raw", e.rho}, {"fh", DefiningFunction(wc.weighted, e.rho.bbox, "fh")}, {"double", DefiningFunction(scaled(e.rho.field, 2.0), e.rho.bbox)}},
      small_collar());
  ASSERT_EQ(idx.entries.size(), 3u);
  double best = 0.0;
  for (const auto& en : idx.entries) best = std::max(best, en.estimate.eta_hat);
  EXPECT_EQ(idx.best, best);
  EXPECT_EQ(idx.entries[idx.argmax].estimate.eta_hat, best);
  // A constant multiple does not change the threshold.
  EXPECT_NEAR(idx.entries[2].estimate.eta_hat, idx.entries[0].estimate.eta_hat, 1e-12);
}
