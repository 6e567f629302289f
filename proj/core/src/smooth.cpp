#include "dfforge/smooth.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "dfforge/errors.hpp"

namespace dfforge {

namespace {

Taylor x_var(double x, int order) { return Taylor::variable(1, order, 0, x); }

std::vector<double> coeffs_1d(const Taylor& t) { return t.coeffs(); }

Taylor step_jet(double x, int order) {
  const Taylor X = x_var(x, order);
  const Taylor a = flat_exp(X);
  const Taylor b = flat_exp(1.0 - X);
  return a / (a + b);
}

Taylor bump_jet(double x, int order) {
  const Taylor X = x_var(x, order);
  return flat_exp(X) * flat_exp(1.0 - X);
}

double bump(double x) { return flat_exp(x) * flat_exp(1.0 - x); }

}  // namespace

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = flat_exp(x), b = flat_exp(1.0 - x);
  return a / (a + b);
}

std::vector<double> smooth_step_series(double x, int order) {
  std::vector<double> s(order + 1, 0.0);
  if (x <= 0.0) return s;
  if (x >= 1.0) {
    s[0] = 1.0;
    return s;
  }
  return coeffs_1d(step_jet(x, order));
}

RiseProfile::RiseProfile(double eps0) : eps0_(eps0) {
  if (!(eps0 > 0.0 && eps0 < 0.5)) throw ParamError("eps0 must lie in (0, 1/2)");
  const double F = 2.0 * eps0 * flat_exp(2.0 * eps0);
  c_ = 2.0 * (1.0 + eps0) / F;
  double lo = 1.0 - eps0, hi = 1.0 + eps0;  // f - t: negative at lo, positive at hi
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) - mid < 0.0 ? lo : hi) = mid;
  }
  t0_ = 0.5 * (lo + hi);
}

double RiseProfile::value(double t) const {
  const double s = t - 1.0 + eps0_;
  return c_ * s * flat_exp(s);
}

std::vector<double> RiseProfile::series(double t, int order) const {
  const double s = t - 1.0 + eps0_;
  if (s <= 0.0) return std::vector<double>(order + 1, 0.0);
  const Taylor S = x_var(s, order);
  return coeffs_1d(S * flat_exp(S) * c_);
}

double RiseProfile::inverse(double y) const {
  if (!(y > 0.0)) throw ParamError("inverse of the rise profile needs y > 0");
  double lo = 1.0 - eps0_, hi = 1.0 - eps0_ + 1.0;
  while (value(hi) < y) hi += 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ClampProfile::ClampProfile(double m) : m_(m) {
  if (!(m > 0.0)) throw ParamError("clamp level must be positive");
  // The step integrates to 1/2 over [0, 1]; the bump supplies the other 1/2.
  const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(bump, 0.0, 1.0);
  bump_scale_ = 0.5 / I;
}

double ClampProfile::value(double t) const {
  if (t <= -m_) return -m_;
  if (t >= -0.5 * m_) return t;
  const double x = (t + m_) / (0.5 * m_);
  auto deriv = [this](double s) { return smooth_step(s) + bump_scale_ * bump(s); };
  const double I = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(deriv, 0.0, x);
  return -m_ + 0.5 * m_ * I;
}

std::vector<double> ClampProfile::series(double t, int order) const {
  std::vector<double> s(order + 1, 0.0);
  s[0] = value(t);
  if (t <= -m_) return s;
  if (t >= -0.5 * m_) {
    if (order >= 1) s[1] = 1.0;
    return s;
  }
  if (order == 0) return s;
  // g' as a function of x = (t + m)/(m/2); coefficients in t pick up (2/m)^j.
  const double x = (t + m_) / (0.5 * m_);
  const Taylor P = step_jet(x, order - 1) + bump_jet(x, order - 1) * bump_scale_;
  double f = 1.0;
  for (int j = 0; j < order; ++j) {
    s[j + 1] = P[j] * f / (j + 1);
    f *= 2.0 / m_;
  }
  return s;
}

}  // namespace dfforge
