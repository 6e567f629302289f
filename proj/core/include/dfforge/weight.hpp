#pragma once

// The weight psi = -C |Hess_r(L_r, N_r)|^2, weighted candidates and checks of the
// first-order identities that the weight satisfies on Levi-flat curves.

#include <vector>

#include "dfforge/domain.hpp"

namespace dfforge {

/// psi = -C |Hess_r(L_r, N_r)|^2 with (L_r, N_r) the frame of r, extended off the boundary by
/// the same formulas. Expansions of order k need expansions of r of order k + 2.
ScalarField fh_weight(const ScalarField& r, double C, double grad_floor = DomainTolerances{}.grad_floor);

struct WeightedCandidate {
  ScalarField r;
  double C = 0.0;
  double eta = 1.0;
  double delta = 0.0;
  ScalarField psi;
  /// r e^psi
  ScalarField rho;
  /// r e^{psi - delta |zeta|^2}; the candidate is -(-weighted)^eta.
  ScalarField weighted;
  /// -(-r e^psi)^eta e^{-delta eta |zeta|^2}, |zeta|^2 = |z|^2 + |w|^2. Values where r >= 0 use
  /// the odd extension (r e^psi)^eta e^{...}; expansions there raise DomainError.
  ScalarField candidate;
};

WeightedCandidate build_candidate(const ScalarField& r, double C, double eta, double delta);

struct WeightIdentityPoint {
  CPoint p;
  double levi = 0.0;      // normalized Levi form of r
  double abs_H_LN = 0.0;  // |Hess_r(L_r, N_r)|
  double L_psi = 0.0;     // |L_r psi|
  double hess_psi_LL = 0.0;
  cd N_lambda;            // N_r Hess_r(L_r, L_r)
  cd L_xi;                // L_r Hess_r(N_r, L_r)
  double inequality = 0.0;  // Hess_psi(L,L) + C |N_r Hess_r(L_r,L_r)|^2  (should be <= 0)
  double identity = 0.0;    // |L_r Hess_r(N_r,L_r) - N_r Hess_r(L_r,L_r)|
};

struct WeightIdentityReport {
  double C = 0.0;
  double tol = 0.0;
  std::vector<WeightIdentityPoint> points;
  double max_L_psi = 0.0;
  double max_inequality = 0.0;
  double max_identity = 0.0;
  bool pass = false;
};

/// HypothesisError if a sigma point is not Levi-flat with Hess_r(L,N) = 0 within flat_tol.
WeightIdentityReport check_weight_identities(const ScalarField& r, double C, const CurveSamples& sigma,
                            double tol = 1e-5, double flat_tol = 1e-8);

struct WeightConstant {
  /// max over the samples of 2 / |grad r| (real gradient).
  double K_hat = 0.0;
  double delta = 0.0;
  double safety = 2.0;
  /// safety * 2 K^2 / delta, i.e. K^2 / (4C) <= delta / 8 with a safety factor.
  double C = 0.0;
  bool heuristic = true;
};

WeightConstant choose_weight_constant(const ScalarField& r, const std::vector<CPoint>& near_sigma,
                                      double delta, double safety = 2.0);

}  // namespace dfforge
