#pragma once

// The transport equation L u = h along a boundary curve transversal to Re L, Im L, the
// obstruction right-hand side, and the cutoff assembly delta e^Phi that removes
// Hess(L, N) on the curve.

#include <functional>

#include "dfforge/curve.hpp"
#include "dfforge/domain.hpp"

namespace dfforge {

using ComplexFn = std::function<cd(const CPoint&)>;

enum class RhsNormalization {
  /// -Hess_delta(L, N) / Nbar(delta)
  NbarDelta,
  /// -Hess_delta(L, N) / |grad delta| (real gradient)
  GradNorm,
};

/// DegenerateGradient when the gradient of delta vanishes at q.
cd obstruction_rhs(const DefiningFunction& delta, const CPoint& q,
                   RhsNormalization norm = RhsNormalization::NbarDelta, const DiffScheme& scheme = {});
ComplexFn obstruction_rhs_fn(const DefiningFunction& delta,
                             RhsNormalization norm = RhsNormalization::NbarDelta,
                             const DiffScheme& scheme = {});

struct TransportOptions {
  std::size_t n_samples = 64;
  double transv_floor = 1e-3;
  double transport_tol = 1e-5;
  DiffScheme scheme;
  DomainTolerances tol;
};

/// Coordinates of x in the frame (Re L, Im L, gamma') at the nearest curve point:
/// x - gamma(t) ~ s1 ReL + s2 ImL + s3 gamma'(t) in the least-squares sense, with
/// ReL, ImL the real vector fields whose derivatives are Re(Lu), Im(Lu) for real u.
struct FrameCoords {
  double t = 0.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double dist = 0.0;
  CPoint foot;
};
FrameCoords frame_coordinates(const Curve& c, const DefiningFunction& rho, const Vec4& x,
                              const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

struct TransportSolution {
  Curve curve;
  CurveSamples gamma;
  /// u(x) = Re h(foot) s1 + Im h(foot) s2; zero on the curve.
  ScalarField u;
  std::vector<cd> h_values;
  std::vector<cd> Lu;
  std::vector<cd> residuals;
  double max_residual = 0.0;
  double max_abs_u_on_curve = 0.0;
  double transport_tol = 0.0;
  bool ok = false;
  TransversalityReport transversality;
};

/// TransversalityError when the curve's transversality margin is below opt.transv_floor.
TransportSolution solve_on_curve(const Curve& c, const DefiningFunction& rho, ComplexFn h,
                                 const TransportOptions& opt = {});

struct CutoffSpec {
  /// Tube radii; zero selects half and three quarters of the curve's reach.
  double inner = 0.0;
  double outer = 0.0;
};

/// 1 for d <= inner, 0 for d >= outer, smooth and decreasing between.
double radial_plateau(double d, double inner, double outer);

struct CorrectedDefining {
  DefiningFunction corrected;
  ScalarField Phi;
  TransportSolution transport;
  double reach = 0.0, inner = 0.0, outer = 0.0;
  /// |Hess(L, N)| on the curve samples before and after the correction.
  std::vector<double> before, after;
  double max_before = 0.0, max_after = 0.0;
  double correction_tol = 1e-5;
  bool ok = false;
};

/// delta e^Phi with Phi = chi u, u solving L u = -Hess_delta(L, N)/Nbar(delta) on the curve.
/// TubeError when the radii are not 0 < inner < outer < reach.
CorrectedDefining corrected_defining(const DefiningFunction& delta, const Curve& c,
                                     const CutoffSpec& cut = {}, const TransportOptions& opt = {},
                                     double correction_tol = 1e-5);

/// max over the samples of |Hess_rho(L, N)| with the unit frame of rho.
std::vector<double> hess_LN_on_curve(const DefiningFunction& rho, const CurveSamples& c,
                                     const DiffScheme& scheme = {});

}  // namespace dfforge
