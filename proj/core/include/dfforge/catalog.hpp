#pragma once

// Hand-coded example domains with exact jets and their known geometric facts.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dfforge/domain.hpp"
#include "dfforge/smooth.hpp"

namespace dfforge {

struct KnownFact {
  enum class Relation { Equal, Greater, Less };
  std::string id;
  Relation relation = Relation::Equal;
  double expected = 0.0;
  double tol = 0.0;
  std::function<double()> measure;
};

struct FactResult {
  std::string id;
  std::string relation;
  double expected = 0.0;
  double measured = 0.0;
  double tol = 0.0;
  bool pass = false;
};

FactResult evaluate_fact(const KnownFact& f);

struct CatalogEntry {
  std::string name;
  /// Canonical spec string, e.g. "exp_flat:a=1,b=1,x0=0,y0=0,v0=0".
  std::string spec;
  std::string description;
  /// "internal" for formulas defined here, "external" for formulas taken from the literature.
  std::string provenance = "internal";
  DefiningFunction rho{constant_field(0.0), Region::everywhere(), "unset"};
  std::map<std::string, double> params;
  std::vector<KnownFact> facts;
};

/// |z|^2 + |w|^2 - 1
CatalogEntry make_ball();
/// a|z|^2 + b|w|^2 - 1
CatalogEntry make_ellipsoid(double a, double b);
/// a|z - z0|^2 + 2 e^{-1/|w - i v0|^2} - b; v0 is the v-coordinate of the centre.
CatalogEntry make_exp_flat(double a, double b, cd z0 = 0.0, double v0 = 0.0);

/// The hypersurface v + R(z, u) = 0 with a sixth-order polynomial R.
CatalogEntry make_behrens();
ScalarField behrens_field();

struct TauScan {
  /// Largest scanned radius r with Levi > 0 at every sampled point of norm in [r_min, r].
  double tau_hat = 0.0;
  double r_min = 1e-4;
  double r_max = 0.0;
  /// Relative spacing of the radial grid.
  double resolution = 0.0;
  std::size_t n_directions = 0;
  std::size_t n_points = 0;
  /// Smallest Levi value found on the accepted shell range.
  double min_levi = 0.0;
};
/// Radial scan of the Levi form on the hypersurface over ||(x, y, u)|| in [r_min, r_max].
TauScan behrens_tau_scan(std::size_t n_directions = 1000, double r_min = 1e-4, double r_max = 2.0,
                         std::size_t n_radii = 400);
/// Cached default scan.
const TauScan& behrens_tau();

struct GluedParams {
  double K = 4.0;
  double eta = 0.5;
  double delta = 1e-2;
  double a = 1.0;
  cd z0 = 0.0;
  double v0 = -1.0;
  double eps0 = 0.25;
  /// Regularization of -(-t)^eta near t = 0: t (t^2 + kappa^2)^{(eta-1)/2}, kappa relative
  /// to delta.
  double kappa_rel = 1e-3;
};

struct PlacementReport {
  GluedParams params;
  double origin_T = 0.0;
  bool origin_in_B1 = false;
  double tau_hat = 0.0;
  double max_intersection_radius = 0.0;
  double min_transversality = 0.0;
  std::size_t n_intersection = 0;
  double eps_ball = 0.0;
  double max_rhoH_outside_cap = 0.0;
  bool level_ok = false;
  bool ok = false;
  std::vector<std::string> failures;
};

PlacementReport check_placement(const GluedParams& p, double tau_hat);

struct PlacementSearch {
  GluedParams chosen;
  PlacementReport report;
  std::vector<PlacementReport> log;
  bool found = false;
};
/// Deterministic grid search over (eps0, a, delta) with z0 = 0 and v0 set so the origin lies
/// well inside B1. Larger eps0, smaller a and larger delta are tried first.
PlacementSearch search_placement(double tau_hat);
/// Cached search with the default tau scan.
const PlacementSearch& default_placement();

/// PlacementError if the placement checks fail.
CatalogEntry make_glued(const GluedParams& p);
CatalogEntry make_glued();

/// 1, 2, 3 for the boundary pieces B1, B2, B3; 0 when no inequality holds.
int glued_piece(const GluedParams& p, const CPoint& q);
/// Number of pieces whose defining inequality holds at q (a partition has exactly one).
int glued_piece_count(const GluedParams& p, const CPoint& q);

/// |z + e^{i log|w|^2}|^2 - 1 + phi(log|w|^2) with phi vanishing on [-(beta - pi/2), beta - pi/2].
CatalogEntry make_worm(double beta);
/// pi / (2 beta - pi)
double worm_bound(double beta);

struct RootCheck {
  double t_star = 0.0;
  double min_value = 0.0;
  double grid_min = 0.0;
  double grid_argmin = 0.0;
  double value_at_zero = 0.0;
  double value_at_left = 0.0;
  bool no_root = false;
};
/// Minimum of g(t) = -t - 1 + 2 e^t on [-50, 0): ParamError unless entry is exp_flat.
RootCheck no_extra_flat_root_check(const CatalogEntry& entry);

std::vector<std::string> catalog_names();
/// Parse "name" or "name:key=value,...". ParamError for unknown names or keys.
CatalogEntry make_entry(const std::string& spec);

struct SelftestReport {
  std::string name;
  std::vector<FactResult> facts;
  std::size_t n_points = 0;
  double max_jet_discrepancy = 0.0;
  double jet_tol = 1e-6;
  bool pass = false;
};
SelftestReport selftest(const CatalogEntry& e, std::uint64_t seed = 1, std::size_t n_points = 100);

}  // namespace dfforge
