#pragma once

// Parametrized curves in C^2 and nearest-parameter projection.

#include <functional>
#include <string>
#include <vector>

#include "dfforge/domain.hpp"

namespace dfforge {

class Curve {
 public:
  using Map = std::function<Vec4(double)>;

  /// Closed curves are periodic on [t_lo, t_hi); open curves live on [t_lo, t_hi].
  Curve(std::string name, Map pos, Map vel, double t_lo, double t_hi, bool closed);

  /// t -> (c + r e^{it}, w0), t in [0, 2 pi).
  static Curve circle(cd center, double radius, cd w0);
  /// Catmull-Rom interpolant through the samples (uniform parameter = sample index). Open
  /// curves are continued linearly past both ends by 5% of their length.
  static Curve interpolate(const CurveSamples& samples, std::string name = "interpolated");

  const std::string& name() const { return name_; }
  bool closed() const { return closed_; }
  double t_lo() const { return lo_; }
  double t_hi() const { return hi_; }
  Vec4 pos(double t) const { return pos_(t); }
  Vec4 vel(double t) const { return vel_(t); }

  /// n samples with unit tangents; closed curves omit the duplicated end point.
  CurveSamples sample(std::size_t n) const;

  /// Parameter of the nearest curve point: grid search followed by golden-section and Newton
  /// refinement. ProjectionAmbiguous when two separated parameters are equally near.
  double nearest(const Vec4& x) const;

  /// Reach estimate: min of the inverse curvature and half the distance between sample points
  /// that are far apart along the curve.
  double reach(std::size_t n = 256) const;

 private:
  std::string name_;
  Map pos_, vel_;
  double lo_, hi_;
  bool closed_;
  std::size_t grid_ = 512;
};

}  // namespace dfforge
