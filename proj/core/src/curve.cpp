#include "dfforge/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dfforge/errors.hpp"

namespace dfforge {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(const Vec4& v) { return dot(v, v); }

}  // namespace

Curve::Curve(std::string name, Map pos, Map vel, double t_lo, double t_hi, bool closed)
    : name_(std::move(name)), pos_(std::move(pos)), vel_(std::move(vel)), lo_(t_lo), hi_(t_hi),
      closed_(closed) {
  if (!(t_hi > t_lo)) throw ParamError("curve needs t_hi > t_lo");
}

Curve Curve::circle(cd center, double radius, cd w0) {
  if (!(radius > 0.0)) throw ParamError("circle radius must be positive");
  auto pos = [=](double t) {
    return Vec4{center.real() + radius * std::cos(t), center.imag() + radius * std::sin(t), w0.real(),
                w0.imag()};
  };
  auto vel = [=](double t) { return Vec4{-radius * std::sin(t), radius * std::cos(t), 0.0, 0.0}; };
  return Curve("circle", pos, vel, 0.0, 2.0 * kPi, true);
}

Curve Curve::interpolate(const CurveSamples& samples, std::string name) {
  const std::size_t n = samples.points.size();
  if (n < (samples.closed ? 3u : 2u)) throw ParamError("too few curve samples to interpolate");
  auto pts = std::make_shared<std::vector<Vec4>>();
  for (const auto& p : samples.points) pts->push_back(p.real());
  const bool closed = samples.closed;
  const double N = static_cast<double>(n);
  // Point k, wrapping for closed curves and reflecting linearly for open ones.
  auto P = [pts, closed, n](long k) -> Vec4 {
    const long m = static_cast<long>(n);
    if (closed) return (*pts)[static_cast<std::size_t>(((k % m) + m) % m)];
    if (k < 0) return (*pts)[0] + static_cast<double>(-k) * ((*pts)[0] - (*pts)[1]);
    if (k >= m) return (*pts)[n - 1] + static_cast<double>(k - m + 1) * ((*pts)[n - 1] - (*pts)[n - 2]);
    return (*pts)[static_cast<std::size_t>(k)];
  };
  auto seg = [P](double t, long& k, double& s) {
    k = static_cast<long>(std::floor(t));
    s = t - static_cast<double>(k);
  };
  auto pos = [P, seg](double t) {
    long k;
    double s;
    seg(t, k, s);
    const Vec4 p0 = P(k - 1), p1 = P(k), p2 = P(k + 1), p3 = P(k + 2);
    const double s2 = s * s, s3 = s2 * s;
    return 0.5 * ((2.0 * p1) + s * (p2 - p0) + s2 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) +
                  s3 * (3.0 * p1 - p0 - 3.0 * p2 + p3));
  };
  auto vel = [P, seg](double t) {
    long k;
    double s;
    seg(t, k, s);
    const Vec4 p0 = P(k - 1), p1 = P(k), p2 = P(k + 1), p3 = P(k + 2);
    return 0.5 * ((p2 - p0) + (2.0 * s) * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) +
                  (3.0 * s * s) * (3.0 * p1 - p0 - 3.0 * p2 + p3));
  };
  if (closed) return Curve(std::move(name), pos, vel, 0.0, N, true);
  const double ext = 0.05 * (N - 1.0);
  return Curve(std::move(name), pos, vel, -ext, N - 1.0 + ext, false);
}

CurveSamples Curve::sample(std::size_t n) const {
  if (n < 2) throw ParamError("need at least two curve samples");
  CurveSamples c;
  c.closed = closed_;
  const double span = hi_ - lo_;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = closed_ ? lo_ + span * static_cast<double>(i) / static_cast<double>(n)
                             : lo_ + span * static_cast<double>(i) / static_cast<double>(n - 1);
    c.points.push_back(CPoint::from_real(pos(t)));
    const Vec4 v = vel(t);
    c.tangents.push_back((1.0 / norm(v)) * v);
  }
  return c;
}

double Curve::nearest(const Vec4& x) const {
  const double span = hi_ - lo_;
  auto d2 = [&](double t) { return sq(pos(t) - x); };
  auto wrap = [&](double t) {
    if (!closed_) return std::clamp(t, lo_, hi_);
    t = std::fmod(t - lo_, span);
    return lo_ + (t < 0.0 ? t + span : t);
  };
  const std::size_t m = grid_;
  const double step = closed_ ? span / static_cast<double>(m) : span / static_cast<double>(m - 1);
  std::vector<double> vals(m);
  for (std::size_t i = 0; i < m; ++i) vals[i] = d2(lo_ + step * static_cast<double>(i));
  std::size_t best = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (vals[i] < vals[best]) best = i;

  // A second, well separated local minimum that is as near is an ambiguous projection.
  const double scale = std::max(1.0, norm(x));
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t gap = closed_ ? std::min((i + m - best) % m, (best + m - i) % m)
                                    : (i > best ? i - best : best - i);
    if (gap <= 2) continue;
    const bool local = closed_ ? vals[i] <= vals[(i + 1) % m] && vals[i] <= vals[(i + m - 1) % m]
                               : (i == 0 || vals[i] <= vals[i - 1]) && (i + 1 == m || vals[i] <= vals[i + 1]);
    if (local && std::abs(std::sqrt(vals[i]) - std::sqrt(vals[best])) < 1e-9 * scale)
      throw ProjectionAmbiguous("nearest curve parameter is not unique");
  }

  // Golden section on [t - step, t + step].
  double a = lo_ + step * static_cast<double>(best) - step, b = a + 2.0 * step;
  if (!closed_) {
    a = std::max(a, lo_);
    b = std::min(b, hi_);
  }
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = d2(c), fd = d2(d);
  for (int it = 0; it < 80 && b - a > 1e-13 * std::max(1.0, span); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = d2(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = d2(d);
    }
  }
  double t = 0.5 * (a + b);
  // Newton on (gamma(t) - x) . gamma'(t) = 0 with a differenced second derivative.
  for (int it = 0; it < 3; ++it) {
    const double e = 1e-6 * std::max(1.0, span);
    const Vec4 r = pos(t) - x, v = vel(t);
    const Vec4 acc = (0.5 / e) * (vel(t + e) - vel(t - e));
    const double f = dot(r, v), fp = dot(v, v) + dot(r, acc);
    if (!(fp > 0.0)) break;
    const double tn = t - f / fp;
    if (std::abs(tn - t) > step) break;
    t = tn;
  }
  return wrap(t);
}

double Curve::reach(std::size_t n) const {
  const CurveSamples s = sample(n);
  const double span = hi_ - lo_;
  double r = std::numeric_limits<double>::infinity();
  // Curvature |v x a| / |v|^3 via the Gram determinant.
  for (std::size_t i = 0; i < n; ++i) {
    const double t = lo_ + span * static_cast<double>(i) / static_cast<double>(n);
    const double e = 1e-5 * std::max(1.0, span);
    const Vec4 v = vel(t), acc = (0.5 / e) * (vel(t + e) - vel(t - e));
    const double vv = dot(v, v), aa = dot(acc, acc), va = dot(v, acc);
    const double k = std::sqrt(std::max(0.0, vv * aa - va * va)) / std::pow(vv, 1.5);
    if (k > 0.0) r = std::min(r, 1.0 / k);
  }
  // Bottlenecks: for each sample, separated samples at a local minimum of the distance.
  auto dist = [&](std::size_t i, long j) {
    const long m = static_cast<long>(n);
    if (closed_) j = ((j % m) + m) % m;
    if (j < 0 || j >= m) return std::numeric_limits<double>::infinity();
    return distance(s.points[i], s.points[static_cast<std::size_t>(j)]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if ((closed_ ? std::min(gap, n - gap) : gap) <= 2) continue;
      const long jj = static_cast<long>(j);
      const double dj = dist(i, jj);
      if (dj <= dist(i, jj - 1) && dj <= dist(i, jj + 1)) r = std::min(r, 0.5 * dj);
    }
  return r;
}

}  // namespace dfforge
