#pragma once

// Empirical Diederich-Fornaess exponent estimation on interior collars.

#include <optional>
#include <string>
#include <vector>

#include "dfforge/hessian_frame.hpp"

namespace dfforge {

struct CollarSpec {
  std::size_t n_boundary = 2000;
  /// Inward distances 10^{-k} * bbox diameter.
  std::vector<double> depth_exponents{2, 3, 4, 5, 6};
  std::uint64_t seed = 1;
  double bisect_tol = 1e-4;
};

struct CollarPoint {
  CPoint p;
  CPoint base;  // boundary sample the point was pushed in from
  double depth = 0.0;
  int depth_level = 0;
  double eta = 0.0;
};

struct FailWitness {
  CPoint p;
  double eta = 0.0;
  double min_eig = 0.0;
};

struct DFEstimate {
  std::string defining_function;
  CollarSpec spec;
  bool empirical = true;
  double eta_hat = 1.0;
  /// Threshold from bisection on "min eigenvalue over all points >= 0".
  double eta_bisect = 1.0;
  bool cross_check_ok = false;
  std::size_t binding_index = 0;
  std::optional<FailWitness> fail_witness;
  std::vector<CollarPoint> points;
  /// Collar points dropped because they were not interior (rho >= 0).
  std::size_t skipped = 0;
  /// min threshold per depth level, in depth_exponents order.
  std::vector<double> eta_by_depth;
  /// Threshold of the collar {depth <= d} for each level's depth d (same order). Monotone:
  /// shrinking the collar can only raise it.
  std::vector<double> eta_collar_by_depth;
};

/// Collar points of rho (eta left unset).
std::vector<CollarPoint> collar_points(const DefiningFunction& rho, const CollarSpec& spec,
                                       std::size_t* skipped = nullptr,
                                       const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

/// Thresholds of rho on the given collar points (which must be interior for rho).
DFEstimate estimate_on_points(const DefiningFunction& rho, std::vector<CollarPoint> points,
                              const CollarSpec& spec, const DiffScheme& scheme = {});

DFEstimate estimate_exponent(const DefiningFunction& rho, const CollarSpec& spec,
                             const DomainTolerances& tol = {}, const DiffScheme& scheme = {});

struct IndexEntry {
  std::string recipe;
  DFEstimate estimate;
};

struct IndexReport {
  std::vector<IndexEntry> entries;
  double best = 0.0;
  std::size_t argmax = 0;
};

/// Every member of the family is evaluated on the collar of the first member (all members
/// must define the same domain).
IndexReport estimate_index(const std::vector<std::pair<std::string, DefiningFunction>>& family,
                           const CollarSpec& spec, const DomainTolerances& tol = {},
                           const DiffScheme& scheme = {});

}  // namespace dfforge
