#include "dfforge/cdiff.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dfforge/errors.hpp"

namespace dfforge {

namespace {

constexpr cd kI{0.0, 1.0};

// Real-chart decomposition of a Wirtinger operator: a * d/d(var_a) + b * d/d(var_b).
struct WOp {
  int var[2];
  cd coef[2];
};

WOp wop(WDir d) {
  switch (d) {
    case WDir::z: return {{0, 1}, {0.5, -0.5 * kI}};
    case WDir::zb: return {{0, 1}, {0.5, 0.5 * kI}};
    case WDir::w: return {{2, 3}, {0.5, -0.5 * kI}};
    case WDir::wb: return {{2, 3}, {0.5, 0.5 * kI}};
  }
  return {};
}

cd second_entry(const Jet2& j, WDir a, WDir b) {
  auto key = [](WDir d) { return static_cast<int>(d); };
  if (key(a) > key(b)) std::swap(a, b);
  using W = WDir;
  if (a == W::z && b == W::z) return j.dzz;
  if (a == W::z && b == W::zb) return j.dzzb;
  if (a == W::z && b == W::w) return j.dzw;
  if (a == W::z && b == W::wb) return j.dzwb;
  if (a == W::zb && b == W::zb) return std::conj(j.dzz);
  if (a == W::zb && b == W::w) return j.dwzb;
  if (a == W::zb && b == W::wb) return std::conj(j.dzw);
  if (a == W::w && b == W::w) return j.dww;
  if (a == W::w && b == W::wb) return j.dwwb;
  return std::conj(j.dww);  // wb, wb
}

RealJet central_jet(const std::function<double(const Vec4&)>& f, const Vec4& p, double h) {
  RealJet r;
  r.val = f(p);
  std::array<double, 4> fp{}, fm{};
  for (int i = 0; i < 4; ++i) {
    Vec4 a = p, b = p;
    a[i] += h;
    b[i] -= h;
    fp[i] = f(a);
    fm[i] = f(b);
    r.grad[i] = (fp[i] - fm[i]) / (2.0 * h);
    r.hess[i][i] = (fp[i] - 2.0 * r.val + fm[i]) / (h * h);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      Vec4 pp = p, pm = p, mp = p, mm = p;
      pp[i] += h, pp[j] += h;
      pm[i] += h, pm[j] -= h;
      mp[i] -= h, mp[j] += h;
      mm[i] -= h, mm[j] -= h;
      double v = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
      r.hess[i][j] = r.hess[j][i] = v;
    }
  }
  return r;
}

// Flatten / unflatten the 1 + 4 + 10 distinct entries of a RealJet.
constexpr int kJetEntries = 15;

std::array<double, kJetEntries> flatten(const RealJet& r) {
  std::array<double, kJetEntries> a{};
  int k = 0;
  a[k++] = r.val;
  for (int i = 0; i < 4; ++i) a[k++] = r.grad[i];
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) a[k++] = r.hess[i][j];
  return a;
}

RealJet unflatten(const std::array<double, kJetEntries>& a) {
  RealJet r;
  int k = 0;
  r.val = a[k++];
  for (int i = 0; i < 4; ++i) r.grad[i] = a[k++];
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) r.hess[i][j] = r.hess[j][i] = a[k++];
  return r;
}

Taylor taylor_from_real(const RealJet& r, int order) {
  Taylor t(4, order, r.val);
  if (order < 1) return t;
  const auto& tab = MonomialTable::get(4);
  for (int i = 0; i < 4; ++i) t[1 + i] = r.grad[i];
  if (order < 2) return t;
  for (int k = 5; k < tab.size(2); ++k) {
    const auto& e = tab.exponents(k);
    int i = -1, j = -1;
    for (int v = 0; v < 4; ++v) {
      for (int m = 0; m < e[v]; ++m) (i < 0 ? i : j) = v;
    }
    t[k] = (i == j) ? 0.5 * r.hess[i][i] : r.hess[i][j];
  }
  return t;
}

class BlackBoxImpl final : public FieldImpl {
 public:
  BlackBoxImpl(std::function<double(const CPoint&)> f, DiffScheme scheme)
      : f_(std::move(f)), scheme_(scheme) {}
  double value(const CPoint& p) const override { return f_(p); }
  int max_order() const override { return 3; }
  Taylor expand(const CPoint& p, int order) const override {
    auto g = [this](const Vec4& x) { return f_(CPoint::from_real(x)); };
    const Vec4 x = p.real();
    Taylor t = taylor_from_real(fd_real_jet(g, x, scheme_), std::min(order, 2));
    if (order < 3) return t;
    // Third partials: central difference of the second-order jets.
    const double h = scheme_.third_step * std::max(1.0, norm(x));
    double third[4][4][4] = {};
    for (int k = 0; k < 4; ++k) {
      Vec4 a = x, b = x;
      a[k] += h;
      b[k] -= h;
      RealJet jp = fd_real_jet(g, a, scheme_);
      RealJet jm = fd_real_jet(g, b, scheme_);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) third[i][j][k] = (jp.hess[i][j] - jm.hess[i][j]) / (2.0 * h);
    }
    Taylor out(4, 3);
    for (int k = 0; k < t.size(); ++k) out[k] = t[k];
    const auto& tab = MonomialTable::get(4);
    for (int m = tab.size(2); m < tab.size(3); ++m) {
      const auto& e = tab.exponents(m);
      int idx[3], c = 0;
      double fact = 1.0;
      for (int v = 0; v < 4; ++v) {
        for (int q = 0; q < e[v]; ++q) idx[c++] = v;
        for (int q = 2; q <= e[v]; ++q) fact *= q;
      }
      // Average over the three placements of the differentiated-last index.
      double s = (third[idx[0]][idx[1]][idx[2]] + third[idx[1]][idx[2]][idx[0]] +
                  third[idx[2]][idx[0]][idx[1]]) /
                 3.0;
      out[m] = s / fact;
    }
    return out;
  }

 private:
  std::function<double(const CPoint&)> f_;
  DiffScheme scheme_;
};

}  // namespace

cd Jet2::hess(const CVec2& a, const CVec2& b) const {
  const auto m = mixed();
  cd s = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) s += a[j] * std::conj(b[k]) * m[j][k];
  return s;
}

double Jet2::hermitian_defect() const {
  return std::max({std::abs(dzwb - std::conj(dwzb)), std::abs(dzzb.imag()), std::abs(dwwb.imag())});
}

Jet2 jet_from_real(const RealJet& r) {
  const auto& g = r.grad;
  const auto& H = r.hess;
  Jet2 j;
  j.val = r.val;
  j.dz = 0.5 * cd(g[0], -g[1]);
  j.dw = 0.5 * cd(g[2], -g[3]);
  j.dzzb = 0.25 * (H[0][0] + H[1][1]);
  j.dwwb = 0.25 * (H[2][2] + H[3][3]);
  j.dzwb = 0.25 * cd(H[0][2] + H[1][3], H[0][3] - H[1][2]);
  j.dwzb = 0.25 * cd(H[2][0] + H[3][1], H[2][1] - H[3][0]);
  j.dzz = 0.25 * cd(H[0][0] - H[1][1], -2.0 * H[0][1]);
  j.dww = 0.25 * cd(H[2][2] - H[3][3], -2.0 * H[2][3]);
  j.dzw = 0.25 * cd(H[0][2] - H[1][3], -(H[0][3] + H[1][2]));
  return j;
}

Jet2 jet_from_taylor(const Taylor& t) {
  if (t.order() < 2) throw NumericalError("second-order jet needs an expansion of order >= 2");
  RealJet r;
  r.val = t[0];
  for (int i = 0; i < 4; ++i) r.grad[i] = t[1 + i];
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      MultiIndex a{};
      ++a[i];
      ++a[j];
      r.hess[i][j] = r.hess[j][i] = t.partial(a);
    }
  }
  return jet_from_real(r);
}

cd wirtinger(const Taylor& t, std::span<const WDir> dirs) {
  const int k = static_cast<int>(dirs.size());
  if (k > t.order()) throw NumericalError("Wirtinger derivative beyond expansion order");
  cd total = 0.0;
  for (int mask = 0; mask < (1 << k); ++mask) {
    MultiIndex a{};
    cd c = 1.0;
    for (int q = 0; q < k; ++q) {
      const WOp op = wop(dirs[q]);
      const int pick = (mask >> q) & 1;
      ++a[op.var[pick]];
      c *= op.coef[pick];
    }
    total += c * t.partial(a);
  }
  return total;
}

CTaylor wderiv(const Taylor& f, WDir d) {
  const WOp op = wop(d);
  Taylor a = f.derivative(op.var[0]);
  Taylor b = f.derivative(op.var[1]);
  // coef[0] = 1/2, coef[1] = -+ i/2
  const double s = op.coef[1].imag() * 2.0;
  return {a * 0.5, b * (0.5 * s)};
}

CTaylor wderiv(const CTaylor& f, WDir d) {
  const WOp op = wop(d);
  const double s = op.coef[1].imag() * 2.0;  // -1 for holomorphic, +1 for antiholomorphic
  // (1/2)(d_a + s i d_b)(re + i im) = (1/2)(re_a - s im_b) + i (1/2)(im_a + s re_b)
  Taylor ra = f.re.derivative(op.var[0]), rb = f.re.derivative(op.var[1]);
  Taylor ia = f.im.derivative(op.var[0]), ib = f.im.derivative(op.var[1]);
  return {(ra - ib * s) * 0.5, (ia + rb * s) * 0.5};
}

RealJet fd_real_jet(const std::function<double(const Vec4&)>& f, const Vec4& p,
                    const DiffScheme& scheme) {
  const int levels = std::max(0, scheme.richardson_levels);
  const double h0 = scheme.base_step * std::max(1.0, norm(p));
  std::vector<std::vector<std::array<double, kJetEntries>>> T(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    T[j].resize(j + 1);
    T[j][0] = flatten(central_jet(f, p, h0 / std::pow(2.0, j)));
    double factor = 1.0;
    for (int k = 1; k <= j; ++k) {
      factor *= 4.0;
      for (int e = 0; e < kJetEntries; ++e)
        T[j][k][e] = T[j][k - 1][e] + (T[j][k - 1][e] - T[j - 1][k - 1][e]) / (factor - 1.0);
    }
  }
  const auto& best = T[levels][levels];
  if (levels >= 1) {
    const auto& prev = T[levels - 1][levels - 1];
    for (int e = 1; e < kJetEntries; ++e) {
      const double diff = std::abs(best[e] - prev[e]);
      if (!(diff <= scheme.consistency_tol * std::max(1.0, std::abs(best[e]))))
        throw NumericalError("Richardson levels disagree (entry " + std::to_string(e) +
                             ", difference " + std::to_string(diff) + ")");
    }
  }
  return unflatten(best);
}

namespace {

void check_region(const ScalarField& f, const CPoint& p) {
  if (!f.region().contains(p))
    throw RegionError("point outside the smooth region of field '" + f.name() + "'");
}

bool use_exact(const ScalarField& f, const DiffScheme& scheme) {
  switch (scheme.mode) {
    case DiffScheme::Mode::Exact:
      if (!f.exact()) throw NumericalError("field '" + f.name() + "' has no exact expansion");
      return true;
    case DiffScheme::Mode::Numeric: return false;
    case DiffScheme::Mode::Auto: return f.exact();
    case DiffScheme::Mode::Expand: return true;
  }
  return false;
}

Jet2 numeric_jet(const ScalarField& f, const CPoint& p, const DiffScheme& scheme) {
  auto g = [&f](const Vec4& x) { return f(CPoint::from_real(x)); };
  return jet_from_real(fd_real_jet(g, p.real(), scheme));
}

}  // namespace

Jet2 jet2(const ScalarField& f, const CPoint& p, const DiffScheme& scheme) {
  check_region(f, p);
  if (use_exact(f, scheme)) return jet_from_taylor(f.expand(p, 2));
  return numeric_jet(f, p, scheme);
}

cd third_derivative(const ScalarField& f, const CPoint& p, const std::array<WDir, 3>& dirs,
                    const DiffScheme& scheme) {
  check_region(f, p);
  if (use_exact(f, scheme)) return wirtinger(f.expand(p, 3), dirs);
  // d_{dirs[0]} applied by one central difference to the second-order entry d_{dirs[1]} d_{dirs[2]}.
  const Vec4 x = p.real();
  const double h = scheme.third_step * std::max(1.0, norm(x));
  const WOp op = wop(dirs[0]);
  cd total = 0.0;
  for (int q = 0; q < 2; ++q) {
    Vec4 a = x, b = x;
    a[op.var[q]] += h;
    b[op.var[q]] -= h;
    const cd ep = second_entry(numeric_jet(f, CPoint::from_real(a), scheme), dirs[1], dirs[2]);
    const cd em = second_entry(numeric_jet(f, CPoint::from_real(b), scheme), dirs[1], dirs[2]);
    total += op.coef[q] * (ep - em) / (2.0 * h);
  }
  return total;
}

ScalarField black_box(std::string name, Region region, std::function<double(const CPoint&)> f,
                      DiffScheme scheme) {
  FieldInfo info;
  info.name = std::move(name);
  info.exact = false;
  info.accuracy = "finite differences (Richardson, base step " + std::to_string(scheme.base_step) + ")";
  return ScalarField(std::make_shared<BlackBoxImpl>(std::move(f), scheme), std::move(region),
                     std::move(info));
}

}  // namespace dfforge
