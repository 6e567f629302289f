#pragma once

// Univariate C-infinity building blocks: smooth steps, plateau bumps and the two cutoff
// profiles used to glue domains. Each profile exposes value(t) and series(t, order)
// (f^(k)(t)/k!), and `lift` applies it to jets.

#include <vector>

#include "dfforge/taylor.hpp"

namespace dfforge {

/// 0 for x <= 0, 1 for x >= 1, beta(x) / (beta(x) + beta(1 - x)) between.
double smooth_step(double x);
std::vector<double> smooth_step_series(double x, int order);

/// f(t) = c F(t - 1 + eps0), F(s) = s e^{-1/s} (0 for s <= 0): zero below 1 - eps0, strictly
/// convex and increasing above. c makes f(1 + eps0) = 2 (1 + eps0), so f(t) = t has a root t0
/// in (1 - eps0, 1 + eps0).
class RiseProfile {
 public:
  explicit RiseProfile(double eps0);
  double eps0() const { return eps0_; }
  double scale() const { return c_; }
  /// The fixed point f(t0) = t0 in (1 - eps0, 1 + eps0).
  double t0() const { return t0_; }
  double value(double t) const;
  std::vector<double> series(double t, int order) const;
  /// Smallest t with f(t) = y for 0 < y (bisection).
  double inverse(double y) const;

 private:
  double eps0_, c_, t0_;
};

/// g(t) = -m for t <= -m, g(t) = t for t >= -m/2, increasing in between (m > 0). The
/// derivative on [-m, -m/2] is a smooth step plus a compensating bump so that the integral
/// matches; the value there is obtained by Gauss-Kronrod quadrature.
class ClampProfile {
 public:
  explicit ClampProfile(double m);
  double m() const { return m_; }
  double value(double t) const;
  std::vector<double> series(double t, int order) const;

 private:
  double m_;
  double bump_scale_;
};

template <class P>
double lift(const P& prof, double t) {
  return prof.value(t);
}

template <class P>
Taylor lift(const P& prof, const Taylor& t) {
  const auto s = prof.series(t.constant(), t.order());
  return t.compose(s);
}

}  // namespace dfforge
