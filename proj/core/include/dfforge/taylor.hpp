#pragma once

// Truncated multivariate Taylor polynomials (forward-mode jets of arbitrary order).
//
// A Taylor holds the coefficients c_a of sum_a c_a dx^a for multi-indices |a| <= order,
// in nvars local variables. Monomials are ordered by total degree, so truncating to a
// lower order is a prefix of the coefficient vector. Arithmetic truncates to the smaller
// order of its operands; elementary functions compose through their univariate Taylor
// series, which makes nesting (derivatives of fields built from derivatives of fields)
// exact up to rounding.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace dfforge {

inline constexpr int kMaxTaylorOrder = 8;
inline constexpr int kMaxTaylorVars = 4;

using MultiIndex = std::array<std::uint8_t, kMaxTaylorVars>;

class MonomialTable {
 public:
  static const MonomialTable& get(int nvars);

  int nvars() const { return nvars_; }
  /// Number of monomials of total degree <= order.
  int size(int order) const { return size_by_order_[order]; }
  const MultiIndex& exponents(int k) const { return exps_[k]; }
  int degree(int k) const { return degree_[k]; }
  /// Index of monomial k * x_var, or -1 past kMaxTaylorOrder.
  int raise(int k, int var) const { return raise_[k][var]; }
  int index(const MultiIndex& a) const;

  struct Product {
    int i, j, k;
  };
  /// Products (i, j) -> k sorted by degree of k; the first products_upto(order) entries
  /// are those with degree(k) <= order.
  std::span<const Product> products(int order) const {
    return {products_.data(), static_cast<size_t>(products_by_order_[order])};
  }

 private:
  explicit MonomialTable(int nvars);

  int nvars_;
  std::vector<MultiIndex> exps_;
  std::vector<int> degree_;
  std::vector<std::array<int, kMaxTaylorVars>> raise_;
  std::vector<int> size_by_order_;
  std::vector<Product> products_;
  std::vector<int> products_by_order_;
};

class Taylor {
 public:
  Taylor() : Taylor(kMaxTaylorVars, 0, 0.0) {}
  Taylor(int nvars, int order, double constant = 0.0);

  /// The local coordinate `at + dx_var`.
  static Taylor variable(int nvars, int order, int var, double at);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(c_.size()); }
  const std::vector<double>& coeffs() const { return c_; }
  double* data() { return c_.data(); }

  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  double constant() const { return c_[0]; }

  /// Partial derivative d^a f at the expansion point (coefficient times a!).
  double partial(const MultiIndex& a) const;
  /// d/dx_var as a polynomial of order - 1 (order 0 stays 0).
  Taylor derivative(int var) const;
  Taylor truncated(int order) const;

  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(const Taylor& o);
  Taylor& operator/=(const Taylor& o);
  Taylor& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Taylor& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }
  Taylor& operator*=(double s);
  Taylor& operator/=(double s) { return *this *= 1.0 / s; }

  Taylor operator-() const;

  /// sum_k coeffs[k] * (self - self(0))^k, i.e. f(self) given f^(k)(a0)/k!.
  Taylor compose(std::span<const double> scaled_derivs) const;

 private:
  int nvars_;
  int order_;
  std::vector<double> c_;
};

Taylor operator+(Taylor a, const Taylor& b);
Taylor operator-(Taylor a, const Taylor& b);
Taylor operator*(const Taylor& a, const Taylor& b);
Taylor operator/(const Taylor& a, const Taylor& b);
Taylor operator+(Taylor a, double s);
Taylor operator+(double s, Taylor a);
Taylor operator-(Taylor a, double s);
Taylor operator-(double s, const Taylor& a);
Taylor operator*(Taylor a, double s);
Taylor operator*(double s, Taylor a);
Taylor operator/(Taylor a, double s);
Taylor operator/(double s, const Taylor& a);

Taylor exp(const Taylor& a);
Taylor log(const Taylor& a);
Taylor sqrt(const Taylor& a);
Taylor pow(const Taylor& a, double e);
Taylor sin(const Taylor& a);
Taylor cos(const Taylor& a);

/// e^{-1/s} for s > 0 and 0 otherwise: the standard flat C-infinity function.
double flat_exp(double s);
Taylor flat_exp(const Taylor& s);

/// Derivatives f^(k)(s)/k!, k = 0..order, of flat_exp.
std::vector<double> flat_exp_series(double s, int order);

inline double value_of(double x) { return x; }
inline double value_of(const Taylor& x) { return x.constant(); }

}  // namespace dfforge
