#include "dfforge/weight.hpp"

#include <algorithm>
#include <cmath>

#include "dfforge/errors.hpp"
#include "dfforge/frame_algebra.hpp"
#include "dfforge/parallel.hpp"

namespace dfforge {

namespace {

class FHWeightImpl final : public FieldImpl {
 public:
  FHWeightImpl(ScalarField r, double C, double floor) : r_(std::move(r)), C_(C), floor_(floor) {}

  double value(const CPoint& p) const override { return expand(p, 0)[0]; }

  Taylor expand(const CPoint& p, int order) const override {
    if (C_ == 0.0) return Taylor(4, order, 0.0);
    const WData<Taylor> d = wdata(r_.expand(p, order + 2));
    const FrameT<Taylor> f = frame_of(d);
    if (!(f.n.constant() > floor_)) throw DegenerateGradient("weight evaluated where d r vanishes");
    const CTaylor h = hess(d, f.L0, f.L1, f.N0, f.N1);
    return abs2(h) * (-C_);
  }

  int max_order() const override { return std::max(0, r_.max_order() - 2); }

 private:
  ScalarField r_;
  double C_;
  double floor_;
};

}  // namespace

ScalarField fh_weight(const ScalarField& r, double C, double grad_floor) {
  if (C < 0.0) throw ParamError("weight constant C must be >= 0");
  FieldInfo info;
  info.name = "fh_weight(" + r.name() + ",C=" + std::to_string(C) + ")";
  info.exact = r.exact();
  info.nesting = r.info().nesting + 1;
  info.accuracy = r.exact() ? "jet arithmetic (rounding only)"
                            : "finite differences of " + r.name();
  return ScalarField(std::make_shared<FHWeightImpl>(r, C, grad_floor), r.region(), info);
}

WeightedCandidate build_candidate(const ScalarField& r, double C, double eta, double delta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ParamError("eta must lie in (0, 1]");
  if (!(delta >= 0.0)) throw ParamError("delta must be >= 0");
  WeightedCandidate wc{r, C, eta, delta, fh_weight(r, C), r, r, r};
  wc.rho = times_exp(r, wc.psi).renamed(r.name() + "*exp(psi)");
  wc.weighted = compose(r.name() + "*exp(psi-delta|zeta|^2)", {r, wc.psi},
                        [delta](auto in, const auto& z, const auto& w) {
                          return in[0] * exp(in[1] - (abs2(z) + abs2(w)) * delta);
                        });
  wc.candidate = compose("candidate(" + r.name() + ")", {r, wc.psi},
                         [eta, delta](auto in, const auto& z, const auto& w) {
                           auto rho = in[0] * exp(in[1]);
                           auto damp = exp((abs2(z) + abs2(w)) * (-delta * eta));
                           if (value_of(rho) < 0.0) return -pow(-rho, eta) * damp;
                           if constexpr (std::is_same_v<std::decay_t<decltype(rho)>, double>) {
                             return pow(rho, eta) * damp;
                           } else {
                             throw DomainError("candidate expanded where r >= 0");
                             return rho;
                           }
                         });
  return wc;
}

WeightIdentityReport check_weight_identities(const ScalarField& r, double C, const CurveSamples& sigma, double tol,
                            double flat_tol) {
  WeightIdentityReport rep;
  rep.C = C;
  rep.tol = tol;
  const ScalarField psi = fh_weight(r, C);
  rep.points.resize(sigma.size());
  parallel_for(sigma.size(), [&](std::size_t i) {
    const CPoint& p = sigma.points[i];
    const WData<Taylor> d = wdata(r.expand(p, 3));
    const FrameT<Taylor> f = frame_of(d);
    const CTaylor lambda = hess(d, f.L0, f.L1, f.L0, f.L1);
    const CTaylor xi = hess(d, f.N0, f.N1, f.L0, f.L1);
    const cd L0 = value_of(f.L0), L1 = value_of(f.L1), N0 = value_of(f.N0), N1 = value_of(f.N1);
    WeightIdentityPoint pt;
    pt.p = p;
    pt.levi = value_of(lambda).real();
    pt.abs_H_LN = std::abs(value_of(xi));
    if (std::abs(pt.levi) > flat_tol || pt.abs_H_LN > flat_tol)
      throw HypothesisError("point is not Levi-flat with Hess(L,N) = 0 (Levi " +
                            std::to_string(pt.levi) + ", |Hess(L,N)| " +
                            std::to_string(pt.abs_H_LN) + ")");
    auto along = [](cd x0, cd x1, const CTaylor& g) {
      return x0 * value_of(wderiv(g, WDir::z)) + x1 * value_of(wderiv(g, WDir::w));
    };
    pt.N_lambda = along(N0, N1, lambda);
    pt.L_xi = along(L0, L1, xi);
    const Jet2 jp = jet2(psi, p);
    const CVec2 L{L0, L1};
    pt.L_psi = std::abs(dfforge::along(L, jp));
    pt.hess_psi_LL = jp.hess(L, L).real();
    pt.inequality = pt.hess_psi_LL + C * std::norm(pt.N_lambda);
    pt.identity = std::abs(pt.L_xi - pt.N_lambda);
    rep.points[i] = pt;
  });
  for (const auto& pt : rep.points) {
    rep.max_L_psi = std::max(rep.max_L_psi, pt.L_psi);
    rep.max_inequality = std::max(rep.max_inequality, pt.inequality);
    rep.max_identity = std::max(rep.max_identity, pt.identity);
  }
  rep.pass = rep.max_L_psi <= tol && rep.max_inequality <= tol && rep.max_identity <= tol;
  return rep;
}

WeightConstant choose_weight_constant(const ScalarField& r, const std::vector<CPoint>& near_sigma,
                                      double delta, double safety) {
  if (!(delta > 0.0)) throw ParamError("delta must be > 0 to choose C");
  WeightConstant wc;
  wc.delta = delta;
  wc.safety = safety;
  for (const auto& p : near_sigma) {
    const double g = norm(value_gradient(r, p).grad);
    if (!(g > 0.0)) throw DegenerateGradient("vanishing gradient near the Levi-flat set");
    wc.K_hat = std::max(wc.K_hat, 2.0 / g);
  }
  wc.C = safety * 2.0 * wc.K_hat * wc.K_hat / delta;
  return wc;
}

}  // namespace dfforge
