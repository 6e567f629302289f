#pragma once

// Frame Hessians, the 2x2 positivity threshold for -(-rho)^eta, and the I/II/III
// decomposition of the complex Hessian of -(-r e^psi)^eta e^{-delta eta |(z,w)|^2}.

#include <optional>
#include <vector>

#include "dfforge/domain.hpp"

namespace dfforge {

struct FrameHessian {
  double H_LL = 0.0;
  cd H_LN;
  double H_NN = 0.0;
  /// N applied to rho, equal to the gradient norm n.
  cd N_rho;
  double grad_norm = 0.0;
  double rho = 0.0;
  CVec2 L{}, N{};
};

FrameHessian frame_hessian_from_jet(const Jet2& j, double grad_floor = DomainTolerances{}.grad_floor);
FrameHessian frame_hessian(const DefiningFunction& rho, const CPoint& p,
                           const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

/// M(eta) = (-rho) H + (1 - eta) v v^*, v = (rho_z, rho_w), H the mixed Hessian block.
/// The Hessian of -(-rho)^eta is eta (-rho)^{eta-2} M(eta).
struct Pencil {
  double rho = 0.0;
  double a = 0.0, d = 0.0;  // diagonal of (-rho) H
  cd b;                     // off-diagonal of (-rho) H
  CVec2 v{};

  static Pencil from_jet(const Jet2& j);
  double min_eig(double eta) const;
  /// Largest eta in [0, 1] with M(eta) positive semidefinite (closed form; 1 when psd for
  /// every eta <= 1, 0 when psd for none).
  double eta_max() const;
};

/// InteriorError if rho(p) >= 0.
double psd_eta_max(const DefiningFunction& rho, const CPoint& p, const DiffScheme& scheme = {});

struct Decomposition {
  double I = 0.0;
  cd II;
  double III = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double C_weight = 0.0;
  // Point data used by the assembled form and the bounds.
  CPoint p;
  double r = 0.0, psi = 0.0, rho = 0.0, zeta2 = 0.0;
  CVec2 L{}, N{};
  /// e^psi (delta eta |L|z|^2 Nb r| + |L psi Nb r| + |Hess_r(L,N)|).
  double II_bound = 0.0;
  /// e^psi / (-2r) (eta - 1) |N r|^2
  double III_bound = 0.0;

  /// Prefactor -eta e^{-delta eta |zeta|^2} (-r e^psi)^{eta-1}.
  double prefactor() const;
  /// prefactor * (|a|^2 I + 2 Re(a conj(b) II) + |b|^2 III)
  double assembled(cd a, cd b) const;
};

/// DomainError if r(p) >= 0. Here |z|^2 stands for |z|^2 + |w|^2.
Decomposition decompose(const ScalarField& r, const ScalarField& psi, double eta, double delta,
                        const CPoint& p, const DiffScheme& scheme = {});

/// Hess_Phi(aL + bN, aL + bN) of the candidate Phi computed directly from its own jet.
double direct_candidate_form(const ScalarField& candidate, const Decomposition& dec, cd a, cd b,
                             const DiffScheme& scheme = {});

struct CollarPointCheck {
  CPoint p;
  double r = 0.0;
  bool III_bound_ok = false;
  double III_margin = 0.0;  // III_bound - III (positive when the bound holds)
  bool form_positive = false;
  double min_form = 0.0;    // min over sampled (a, b) of the assembled form
  double min_eig = 0.0;     // smallest eigenvalue of the assembled 2x2 form
};

struct CollarReport {
  std::vector<CollarPointCheck> points;
  bool all_III = false;
  bool all_positive = false;
  double worst_III_margin = 0.0;
  double worst_form = 0.0;
  /// Largest |r| among points where both checks hold and every point with smaller |r| holds.
  double largest_passing_depth = 0.0;
};

CollarReport collar_inequality_check(const ScalarField& r, const ScalarField& psi, double eta,
                                     double delta, const std::vector<CPoint>& points,
                                     std::size_t n_ab = 64, const DiffScheme& scheme = {});

}  // namespace dfforge
