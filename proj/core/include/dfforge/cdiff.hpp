#pragma once

// Wirtinger derivatives of real scalar fields on C^2.
//
// Two independent routes are provided. Fields built from formulas are differentiated by
// jet arithmetic (exact up to rounding, any nesting depth). Any field can also be
// differentiated numerically by central differences on the real chart with Richardson
// extrapolation; black-box fields use that route for their expansions.
//
// Conventions: z = x + iy, w = u + iv, d/dz = (d/dx - i d/dy)/2, d/dzb = (d/dx + i d/dy)/2.

#include <array>
#include <functional>
#include <span>

#include "dfforge/cpoint.hpp"
#include "dfforge/field.hpp"

namespace dfforge {

enum class WDir { z, zb, w, wb };

struct DiffScheme {
  /// Auto: jets from the expansion of exact fields, finite differences of values otherwise.
  /// Expand: always the field's own expansion (composites keep exact parts exact and
  /// difference only their black-box inputs).
  enum class Mode { Auto, Exact, Numeric, Expand };
  Mode mode = Mode::Auto;
  /// h0 = base_step * max(1, |p|).
  double base_step = 1e-3;
  int richardson_levels = 2;
  /// Relative disagreement between the last two Richardson levels that raises NumericalError.
  double consistency_tol = 1e-4;
  /// Step for the outer central difference of numeric third derivatives.
  double third_step = 1e-3;
  double tol_hermitian = 1e-6;
  double tol_nest = 1e-4;
};

/// Second-order Wirtinger jet of a real field. f_zb = conj(f_z) and f_wb = conj(f_w).
struct Jet2 {
  double val = 0.0;
  cd dz, dw;
  cd dzzb, dzwb, dwzb, dwwb;
  cd dzz, dzw, dww;

  cd dzb() const { return std::conj(dz); }
  cd dwb() const { return std::conj(dw); }
  /// (f_z, f_w)
  CVec2 d() const { return {dz, dw}; }
  /// Mixed block [[f_zzb, f_zwb], [f_wzb, f_wwb]].
  std::array<std::array<cd, 2>, 2> mixed() const { return {{{dzzb, dzwb}, {dwzb, dwwb}}}; }
  /// Hess(A, B) = sum_jk A_j conj(B_k) f_{j kb}.
  cd hess(const CVec2& a, const CVec2& b) const;
  /// max |mixed - mixed^H|
  double hermitian_defect() const;
};

/// Real partial derivatives up to order two on the chart (x, y, u, v).
struct RealJet {
  double val = 0.0;
  std::array<double, 4> grad{};
  std::array<std::array<double, 4>, 4> hess{};
};

Jet2 jet_from_real(const RealJet& r);
Jet2 jet_from_taylor(const Taylor& t);

/// Wirtinger derivative d_{dirs[0]} ... d_{dirs[k-1]} f at the expansion point of t.
cd wirtinger(const Taylor& t, std::span<const WDir> dirs);

/// Wirtinger derivative of a jet as a complex jet of one order less.
CTaylor wderiv(const Taylor& f, WDir d);
CTaylor wderiv(const CTaylor& f, WDir d);

/// Central differences with Richardson extrapolation of an arbitrary function on R^4.
RealJet fd_real_jet(const std::function<double(const Vec4&)>& f, const Vec4& p,
                    const DiffScheme& scheme);

Jet2 jet2(const ScalarField& f, const CPoint& p, const DiffScheme& scheme = {});
cd third_derivative(const ScalarField& f, const CPoint& p, const std::array<WDir, 3>& dirs,
                    const DiffScheme& scheme = {});

/// Field given only as a pointwise evaluator; expansions (order <= 3) use finite differences.
ScalarField black_box(std::string name, Region region, std::function<double(const CPoint&)> f,
                      DiffScheme scheme = {});

}  // namespace dfforge
