#pragma once

// Small dense linear algebra on the real chart R^4.

#include <array>
#include <span>

#include "dfforge/cpoint.hpp"

namespace dfforge {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Singular values (descending) of the 4 x k matrix whose columns are `cols` (k <= 4).
std::array<double, 4> singular_values(std::span<const Vec4> cols);
double min_singular_value(std::span<const Vec4> cols);

struct SymEigen4 {
  std::array<double, 4> values;  // descending
  std::array<Vec4, 4> vectors;   // unit eigenvectors matching values
};
SymEigen4 sym_eigen(const Mat4& m);

/// Least-squares coefficients c minimizing |sum_k c_k cols[k] - rhs|.
std::array<double, 3> least_squares3(const std::array<Vec4, 3>& cols, const Vec4& rhs);

/// Smallest eigenvalue of the Hermitian matrix [[a, b], [conj(b), d]].
double herm2_min_eig(double a, cd b, double d);

}  // namespace dfforge
