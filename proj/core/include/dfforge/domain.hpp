#pragma once

// Defining functions, boundary sampling and projection, the normalized boundary frame,
// Levi forms, Levi-flat scans and transversality of boundary curves.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dfforge/cdiff.hpp"
#include "dfforge/cpoint.hpp"
#include "dfforge/field.hpp"

namespace dfforge {

struct DomainTolerances {
  double grad_floor = 1e-8;
  /// Boundary acceptance |rho| <= boundary_tol * |grad rho| (real gradient).
  double boundary_tol = 1e-9;
  int max_iter = 100;
};

/// rho with Omega = {rho < 0}; `bbox` contains the closed domain.
struct DefiningFunction {
  ScalarField field;
  Region bbox;
  std::string name;
  /// Optional seed generator for boundary sampling (points near the boundary). When empty,
  /// seeds lie on the ellipsoid inscribed in bbox.
  std::function<std::vector<CPoint>(std::size_t n, std::uint64_t seed)> seeder;

  DefiningFunction(ScalarField f, Region box, std::string nm = {})
      : field(std::move(f)), bbox(std::move(box)), name(nm.empty() ? field.name() : std::move(nm)) {}

  double operator()(const CPoint& p) const { return field(p); }
};

struct ValueGrad {
  double val = 0.0;
  Vec4 grad{};
};
/// Value and real gradient (exact expansion when available, finite differences otherwise).
ValueGrad value_gradient(const ScalarField& f, const CPoint& p, const DiffScheme& scheme = {});

/// Damped Newton projection along the gradient. A start at a critical point is moved by a
/// small deterministic step along +x before iterating.
CPoint project_to_boundary(const DefiningFunction& rho, const CPoint& p,
                           const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

/// Normalized frame L = (rho_w, -rho_z)/n, N = (conj rho_z, conj rho_w)/n with
/// n = sqrt(|rho_z|^2 + |rho_w|^2).
struct Frame {
  CVec2 L{};
  CVec2 N{};
  double grad_norm = 0.0;
};
Frame frame_from_jet(const Jet2& j, double grad_floor = DomainTolerances{}.grad_floor);
Frame frame(const DefiningFunction& rho, const CPoint& q, const DomainTolerances& tol = {},
            const DiffScheme& scheme = {});

/// Apply a holomorphic vector X = X0 d/dz + X1 d/dw to the field with jet j.
inline cd along(const CVec2& X, const Jet2& j) { return X[0] * j.dz + X[1] * j.dw; }
/// Apply conj(X) = conj(X0) d/dzb + conj(X1) d/dwb.
inline cd along_bar(const CVec2& X, const Jet2& j) {
  return std::conj(X[0]) * j.dzb() + std::conj(X[1]) * j.dwb();
}

struct LeviForm {
  /// Hess(L, L) with the unit frame.
  double normalized = 0.0;
  /// Hess(L~, L~) with L~ = (rho_w, -rho_z), i.e. normalized * n^2.
  double unnormalized = 0.0;
};
LeviForm levi_from_jet(const Jet2& j, double grad_floor = DomainTolerances{}.grad_floor);
LeviForm levi_form(const DefiningFunction& rho, const CPoint& q, const DomainTolerances& tol = {},
                   const DiffScheme& scheme = {});

struct BoundarySample {
  std::vector<CPoint> points;
  /// Index of the seed each point came from.
  std::vector<std::size_t> seed_index;
  std::size_t attempted = 0;
  double min_grad_norm = 0.0;
};
/// Quasi-uniform boundary sample: seeds projected to the boundary. SamplingError when fewer
/// than half of the seeds converge.
BoundarySample boundary_sample(const DefiningFunction& rho, std::size_t n, std::uint64_t seed,
                               const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

struct LeviScanOptions {
  std::size_t n_samples = 10000;
  double flat_tol = 1e-8;
  std::uint64_t seed = 1;
  /// Single-linkage distance, in units of the scan resolution.
  double link_factor = 3.0;
  /// PCA eigenvalue ratio above which a component is curve-like.
  double curve_ratio = 25.0;
  /// Components with extent below this many resolutions are point-like.
  double point_factor = 5.0;
  /// Relative radial spread below which a planar component counts as a ring.
  double ring_spread = 0.2;
};

struct LeviComponent {
  Vec4 centroid{};
  double extent = 0.0;
  std::string classification;
  std::array<double, 4> pca{};
  /// Ring fit in the top two principal directions (radius, relative radial spread).
  double ring_radius = 0.0;
  double ring_spread = 0.0;
  std::vector<CPoint> points;
  std::vector<double> levi;
};

struct LeviScanReport {
  std::string domain;
  std::size_t n_samples = 0;
  std::size_t n_converged = 0;
  double flat_tol = 0.0;
  /// Median nearest-neighbour distance of the boundary sample.
  double resolution = 0.0;
  std::size_t n_flat = 0;
  std::vector<LeviComponent> components;
};

LeviScanReport levi_flat_scan(const DefiningFunction& rho, const LeviScanOptions& opt,
                              const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

/// Median nearest-neighbour distance of a point set (estimated on a deterministic subsample).
double median_nn_distance(const std::vector<Vec4>& pts, std::size_t max_queries = 4000);

/// Ordered samples of a boundary curve with unit tangents in the real chart.
struct CurveSamples {
  std::vector<CPoint> points;
  std::vector<Vec4> tangents;
  bool closed = false;

  /// Tangents by central differences (wrapping for closed curves).
  static CurveSamples from_points(std::vector<CPoint> pts, bool closed);
  std::size_t size() const { return points.size(); }
};

/// Max of |rho| / |grad rho| over the curve.
double curve_boundary_defect(const CurveSamples& c, const DefiningFunction& rho,
                             const DiffScheme& scheme = {});

/// Real 4-vectors of 2 Re L and 2 Im L for L = f d/dz + g d/dw:
/// (Re f, Im f, Re g, Im g) and (Im f, -Re f, Im g, -Re g).
std::array<Vec4, 2> realified(const CVec2& L);

struct TransversalityReport {
  std::vector<double> sigma_min;    // of [gamma', 2Re L, 2Im L]
  std::vector<double> sigma_min_L;  // of [2Re L, 2Im L]
  double min_sigma = 0.0;
  double min_sigma_L = 0.0;
  double floor = 0.0;
  bool transversal = false;
};
TransversalityReport transversality_check(const CurveSamples& c, const DefiningFunction& rho,
                                          double floor = 1e-3, const DomainTolerances& tol = {},
                                          const DiffScheme& scheme = {});

}  // namespace dfforge
