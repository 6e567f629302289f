#include "dfforge/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace dfforge {

std::array<double, 4> singular_values(std::span<const Vec4> cols) {
  Eigen::MatrixXd m(4, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (int i = 0; i < 4; ++i) m(i, static_cast<Eigen::Index>(k)) = cols[k][i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::array<double, 4> out{};
  const auto& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) out[static_cast<std::size_t>(i)] = s(i);
  return out;
}

double min_singular_value(std::span<const Vec4> cols) {
  if (cols.empty()) return 0.0;
  return singular_values(cols)[cols.size() - 1];
}

SymEigen4 sym_eigen(const Mat4& m) {
  Eigen::Matrix4d a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = m[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(a);
  SymEigen4 out;
  for (int k = 0; k < 4; ++k) {
    const int src = 3 - k;  // Eigen sorts ascending
    out.values[k] = es.eigenvalues()(src);
    for (int i = 0; i < 4; ++i) out.vectors[k][i] = es.eigenvectors()(i, src);
  }
  return out;
}

std::array<double, 3> least_squares3(const std::array<Vec4, 3>& cols, const Vec4& rhs) {
  Eigen::Matrix<double, 4, 3> a;
  Eigen::Vector4d b;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 3; ++k) a(i, k) = cols[k][i];
    b(i) = rhs[i];
  }
  Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  return {c(0), c(1), c(2)};
}

double herm2_min_eig(double a, cd b, double d) {
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  return mean - std::sqrt(half * half + std::norm(b));
}

}  // namespace dfforge
