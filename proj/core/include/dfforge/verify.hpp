#pragma once

// Composite verification runs assembled from the module operations. They return measured
// quantities only; pass/fail thresholds belong to the caller.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dfforge/catalog.hpp"
#include "dfforge/curve.hpp"
#include "dfforge/df_estimator.hpp"
#include "dfforge/transport.hpp"

namespace dfforge {

/// The circle {|z - center| = radius, w = w0}.
struct CircleData {
  cd center;
  double radius = 0.0;
  cd w0;
};

/// Levi-flat circle of an exp_flat or glued entry (the B2 circle for glued).
/// ParamError for other entries.
CircleData flat_circle_data(const CatalogEntry& e);
Curve flat_circle(const CatalogEntry& e);

/// Euclidean distance from q to the circle {|z - c| = r, w = w0}.
double distance_to_circle(const CPoint& q, cd c, double r, cd w0);

/// rho e^{eps Re w} (coord 'w') or rho e^{eps Re z} (coord 'z').
DefiningFunction perturbed(const DefiningFunction& rho, double eps, char coord);

/// Rebuilds the glued parameters stored in a glued entry.
GluedParams glued_params(const CatalogEntry& e);

/// Uniform points of the bbox with r <= -margin (rejection sampling).
std::vector<CPoint> interior_points(const DefiningFunction& r, std::size_t n, std::uint64_t seed,
                                    double margin);

struct IdentityOptions {
  std::size_t n_points = 200;
  std::size_t n_ab = 64;
  double C = 1.0;
  double eta = 0.5;
  double delta = 0.1;
  std::uint64_t seed = 1;
  /// Interior points satisfy r <= -margin so finite-difference stencils stay inside.
  double margin = 1e-2;
};

struct IdentityPoint {
  CPoint p;
  double r = 0.0;
  /// max over (a, b) of |assembled - direct| / max(|direct|, 1e-12 * max_ab |direct|)
  double rel_err_exact = 0.0;
  double rel_err_numeric = 0.0;
  double max_abs_direct = 0.0;
};

struct IdentityCheck {
  std::string domain;
  IdentityOptions opt;
  std::vector<IdentityPoint> points;
  /// Direct route by jet arithmetic on the candidate.
  double max_rel_err_exact = 0.0;
  /// Direct route by finite differences of candidate values.
  double max_rel_err_numeric = 0.0;
};

/// Assembled I/II/III form against the Hessian of the candidate built from the same r, psi.
IdentityCheck decomposition_identity_check(const CatalogEntry& e, const IdentityOptions& opt,
                                           const DiffScheme& scheme = {});

struct FlatLocusCheck {
  LeviScanReport scan;
  cd center;
  double radius = 0.0;
  cd w0;
  std::size_t n_curve_like = 0;
  std::size_t n_other = 0;
  /// sup over flat points of the distance to the circle.
  double dist_points_to_circle = 0.0;
  /// sup over the circle (3600 samples) of the distance to the nearest flat point.
  double dist_circle_to_points = 0.0;
  double hausdorff = 0.0;
  RootCheck root;
};

/// Levi-flat scan of an exp_flat entry compared with its closed-form flat circle.
FlatLocusCheck exp_flat_locus_check(const CatalogEntry& e, const LeviScanOptions& opt,
                                    const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

struct GluedCheckOptions {
  std::size_t n_boundary = 10000;
  std::uint64_t seed = 1;
  LeviScanOptions scan{100000, 1e-8, 7};
  /// Flat points must lie within confine_factor * resolution of the B2 circle or the origin.
  double confine_factor = 10.0;
};

struct GluedCheck {
  GluedParams params;
  PlacementReport placement;
  std::size_t n_boundary = 0;
  double min_grad = 0.0;
  std::size_t partition_violations = 0;
  std::array<std::size_t, 3> piece_counts{};
  LeviScanReport scan;
  double b2_radius = 0.0;
  double confine_tol = 0.0;
  double max_confine_dist = 0.0;
  std::size_t n_near_circle = 0, n_near_origin = 0, n_outside = 0;
};

GluedCheck glued_check(const CatalogEntry& e, const GluedCheckOptions& opt,
                       const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

struct FhGridOptions {
  std::vector<double> C{0.5, 1.0, 5.0};
  std::vector<double> delta{0.01, 0.1, 0.5};
  /// Neighbourhoods {dist(p, flat circle) < s} of the Levi-flat circle, largest first.
  std::vector<double> sigma_radii{1.0, 0.5, 0.3, 0.2, 0.1};
  CollarSpec collar;
};

struct FhGridRow {
  std::string recipe;
  double C = 0.0, delta = 0.0;
  double eta_hat = 0.0;
  bool cross_check_ok = false;
  std::vector<double> eta_collar_by_depth;
  /// Threshold restricted to collar points near the flat circle, one per sigma radius.
  std::vector<double> eta_near_sigma;
  bool ge_raw = false;
  bool nondecreasing_toward_sigma = false;
};

struct FhGrid {
  IndexReport index;
  std::vector<double> sigma_radii;
  /// rows[0] is the raw defining function.
  std::vector<FhGridRow> rows;
  double best = 0.0;
  std::string best_recipe;
  bool all_ge_raw = false;
  bool all_nondecreasing = false;
};

/// Raw rho and the weighted functions r e^{psi - delta |zeta|^2} over a (C, delta) grid, all on
/// the collar of the raw rho. Requires an entry with a flat circle.
FhGrid fh_grid(const CatalogEntry& e, const FhGridOptions& opt, const DomainTolerances& tol = {},
               const DiffScheme& scheme = {});

}  // namespace dfforge
