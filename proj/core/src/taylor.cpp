#include "dfforge/taylor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <memory>
#include <mutex>

#include "dfforge/errors.hpp"

namespace dfforge {

namespace {

constexpr int kBase = kMaxTaylorOrder + 1;

int encode(const MultiIndex& a, int nvars) {
  int key = 0;
  for (int v = 0; v < nvars; ++v) key = key * kBase + a[v];
  return key;
}

void enumerate_degree(int nvars, int var, int remaining, MultiIndex& cur,
                      std::vector<MultiIndex>& out) {
  if (var == nvars - 1) {
    cur[var] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = static_cast<std::uint8_t>(e);
    enumerate_degree(nvars, var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

std::vector<int> g_lookup_storage[kMaxTaylorVars + 1];

}  // namespace

MonomialTable::MonomialTable(int nvars) : nvars_(nvars) {
  for (int d = 0; d <= kMaxTaylorOrder; ++d) {
    MultiIndex cur{};
    enumerate_degree(nvars, 0, d, cur, exps_);
    size_by_order_.push_back(static_cast<int>(exps_.size()));
  }
  const int n = static_cast<int>(exps_.size());
  degree_.resize(n);
  int full = 1;
  for (int v = 0; v < nvars; ++v) full *= kBase;
  auto& lookup = g_lookup_storage[nvars];
  lookup.assign(full, -1);
  for (int k = 0; k < n; ++k) {
    int d = 0;
    for (int v = 0; v < nvars; ++v) d += exps_[k][v];
    degree_[k] = d;
    lookup[encode(exps_[k], nvars)] = k;
  }
  raise_.resize(n);
  for (int k = 0; k < n; ++k) {
    for (int v = 0; v < kMaxTaylorVars; ++v) {
      raise_[k][v] = -1;
      if (v < nvars && degree_[k] < kMaxTaylorOrder) {
        MultiIndex a = exps_[k];
        ++a[v];
        raise_[k][v] = lookup[encode(a, nvars)];
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (degree_[i] + degree_[j] > kMaxTaylorOrder) continue;
      MultiIndex a{};
      for (int v = 0; v < nvars; ++v) a[v] = static_cast<std::uint8_t>(exps_[i][v] + exps_[j][v]);
      products_.push_back({i, j, lookup[encode(a, nvars)]});
    }
  }
  std::stable_sort(products_.begin(), products_.end(), [this](const Product& a, const Product& b) {
    return degree_[a.k] < degree_[b.k];
  });
  products_by_order_.assign(kMaxTaylorOrder + 1, 0);
  for (int o = 0; o <= kMaxTaylorOrder; ++o) {
    products_by_order_[o] = static_cast<int>(
        std::count_if(products_.begin(), products_.end(),
                      [&](const Product& p) { return degree_[p.k] <= o; }));
  }
}

const MonomialTable& MonomialTable::get(int nvars) {
  static std::once_flag flags[kMaxTaylorVars + 1];
  static std::unique_ptr<MonomialTable> tables[kMaxTaylorVars + 1];
  if (nvars < 1 || nvars > kMaxTaylorVars) throw NumericalError("unsupported Taylor variable count");
  std::call_once(flags[nvars], [nvars] { tables[nvars].reset(new MonomialTable(nvars)); });
  return *tables[nvars];
}

int MonomialTable::index(const MultiIndex& a) const {
  int d = 0;
  for (int v = 0; v < nvars_; ++v) d += a[v];
  if (d > kMaxTaylorOrder) return -1;
  return g_lookup_storage[nvars_][encode(a, nvars_)];
}

Taylor::Taylor(int nvars, int order, double constant) : nvars_(nvars), order_(order) {
  if (order < 0 || order > kMaxTaylorOrder)
    throw NumericalError("Taylor order " + std::to_string(order) + " out of range");
  c_.assign(MonomialTable::get(nvars).size(order), 0.0);
  c_[0] = constant;
}

Taylor Taylor::variable(int nvars, int order, int var, double at) {
  Taylor t(nvars, order, at);
  if (order >= 1) t.c_[1 + var] = 1.0;  // degree-1 monomials follow the constant in var order
  return t;
}

double Taylor::partial(const MultiIndex& a) const {
  const auto& tab = MonomialTable::get(nvars_);
  int k = tab.index(a);
  if (k < 0 || k >= size()) throw NumericalError("partial derivative beyond Taylor order");
  double f = 1.0;
  for (int v = 0; v < nvars_; ++v)
    for (int e = 2; e <= a[v]; ++e) f *= e;
  return c_[k] * f;
}

Taylor Taylor::derivative(int var) const {
  const auto& tab = MonomialTable::get(nvars_);
  Taylor out(nvars_, std::max(order_ - 1, 0));
  if (order_ == 0) return out;
  for (int k = 0; k < out.size(); ++k) {
    int up = tab.raise(k, var);
    out.c_[k] = (tab.exponents(k)[var] + 1) * c_[up];
  }
  return out;
}

Taylor Taylor::truncated(int order) const {
  Taylor out(nvars_, std::min(order, order_));
  std::copy_n(c_.begin(), out.size(), out.c_.begin());
  return out;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (int k = 0; k < size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  for (int k = 0; k < size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Taylor& Taylor::operator*=(const Taylor& o) {
  *this = *this * o;
  return *this;
}

Taylor& Taylor::operator/=(const Taylor& o) {
  *this = *this / o;
  return *this;
}

Taylor& Taylor::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Taylor Taylor::operator-() const {
  Taylor out = *this;
  for (double& x : out.c_) x = -x;
  return out;
}

Taylor Taylor::compose(std::span<const double> scaled_derivs) const {
  const int k_max = std::min<int>(order_, static_cast<int>(scaled_derivs.size()) - 1);
  Taylor dx = *this;
  dx.c_[0] = 0.0;
  Taylor out(nvars_, order_, scaled_derivs[k_max]);
  for (int k = k_max - 1; k >= 0; --k) {
    out = out * dx;
    out.c_[0] += scaled_derivs[k];
  }
  return out;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  const int order = std::min(a.order(), b.order());
  Taylor out(a.nvars(), order);
  if (order == 0) {
    out[0] = a[0] * b[0];
    return out;
  }
  const auto& tab = MonomialTable::get(a.nvars());
  double* oc = out.data();
  const double* ac = a.coeffs().data();
  const double* bc = b.coeffs().data();
  for (const auto& p : tab.products(order)) oc[p.k] += ac[p.i] * bc[p.j];
  return out;
}

Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
Taylor operator+(Taylor a, double s) { return a += s; }
Taylor operator+(double s, Taylor a) { return a += s; }
Taylor operator-(Taylor a, double s) { return a -= s; }
Taylor operator-(double s, const Taylor& a) { return (-a) += s; }
Taylor operator*(Taylor a, double s) { return a *= s; }
Taylor operator*(double s, Taylor a) { return a *= s; }
Taylor operator/(Taylor a, double s) { return a /= s; }

namespace {

std::vector<double> reciprocal_series(double a0, int order) {
  if (a0 == 0.0) throw DomainError("division by a Taylor polynomial with zero constant term");
  std::vector<double> d(order + 1);
  double p = 1.0 / a0;
  for (int k = 0; k <= order; ++k) {
    d[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= a0;
  }
  return d;
}

}  // namespace

Taylor operator/(double s, const Taylor& a) {
  auto d = reciprocal_series(a[0], a.order());
  return a.compose(d) * s;
}

Taylor operator/(const Taylor& a, const Taylor& b) { return a * (1.0 / b); }

Taylor exp(const Taylor& a) {
  std::vector<double> d(a.order() + 1);
  double e = std::exp(a[0]);
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    d[k] = e / fact;
  }
  return a.compose(d);
}

Taylor log(const Taylor& a) {
  if (!(a[0] > 0.0)) throw DomainError("log of a non-positive value");
  std::vector<double> d(a.order() + 1);
  d[0] = std::log(a[0]);
  double p = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    p /= a[0];
    d[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / k;
  }
  return a.compose(d);
}

Taylor pow(const Taylor& a, double e) {
  if (!(a[0] > 0.0)) throw DomainError("fractional power of a non-positive value");
  std::vector<double> d(a.order() + 1);
  double binom = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) binom *= (e - (k - 1)) / k;
    d[k] = binom * std::pow(a[0], e - k);
  }
  return a.compose(d);
}

Taylor sqrt(const Taylor& a) { return pow(a, 0.5); }

Taylor sin(const Taylor& a) {
  std::vector<double> d(a.order() + 1);
  const double s = std::sin(a[0]), c = std::cos(a[0]);
  const double cyc[4] = {s, c, -s, -c};
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    d[k] = cyc[k % 4] / fact;
  }
  return a.compose(d);
}

Taylor cos(const Taylor& a) {
  std::vector<double> d(a.order() + 1);
  const double s = std::sin(a[0]), c = std::cos(a[0]);
  const double cyc[4] = {c, -s, -c, s};
  double fact = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) fact *= k;
    d[k] = cyc[k % 4] / fact;
  }
  return a.compose(d);
}

double flat_exp(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

std::vector<double> flat_exp_series(double s, int order) {
  std::vector<double> d(order + 1, 0.0);
  if (!(s > 0.0)) return d;
  const double t = 1.0 / s;
  const double e = std::exp(-t);
  if (e == 0.0) return d;
  // f^(k) = e^{-t} P_k(t), P_{k+1}(t) = t^2 (P_k(t) - P_k'(t)).
  std::vector<double> p{1.0};
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    double val = 0.0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) val = val * t + p[i];
    d[k] = e * val / fact;
    std::vector<double> next(p.size() + 2, 0.0);
    for (size_t i = 0; i < p.size(); ++i) {
      next[i + 2] += p[i];
      if (i >= 1) next[i + 1] -= static_cast<double>(i) * p[i];
    }
    p = std::move(next);
  }
  return d;
}

Taylor flat_exp(const Taylor& s) { return s.compose(flat_exp_series(s[0], s.order())); }

}  // namespace dfforge
