#pragma once

// Scalar fields on C^2.
//
// A ScalarField is an immutable, shareable evaluator of a real function together with the
// open region where it is smooth. Besides pointwise values it produces local Taylor
// expansions in the real chart (x, y, u, v); fields assembled from formulas expand exactly
// through jet arithmetic, black-box fields (see cdiff.hpp) expand by finite differences.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dfforge/cplx.hpp"
#include "dfforge/cpoint.hpp"
#include "dfforge/taylor.hpp"

namespace dfforge {

struct Region {
  Vec4 lo{-1e300, -1e300, -1e300, -1e300};
  Vec4 hi{1e300, 1e300, 1e300, 1e300};
  /// Points where the field is not smooth (e.g. w = 0 for a function of log|w|).
  std::function<bool(const CPoint&)> excluded;
  std::string excluded_desc;

  static Region box(const Vec4& lo, const Vec4& hi) {
    Region r;
    r.lo = lo;
    r.hi = hi;
    return r;
  }
  static Region everywhere() { return {}; }

  bool contains(const CPoint& p) const;
  bool bounded() const;
  Vec4 center() const;
  /// Euclidean diameter of the box.
  double diameter() const;
  Region intersect(const Region& o) const;
};

struct FieldInfo {
  std::string name;
  /// True when expansions come from jet arithmetic on formulas (rounding error only).
  bool exact = true;
  /// Number of composition layers above the primitive fields.
  int nesting = 0;
  std::string accuracy = "jet arithmetic (rounding only)";
};

class FieldImpl {
 public:
  virtual ~FieldImpl() = default;
  virtual double value(const CPoint& p) const = 0;
  /// Taylor expansion about p in the local real coordinates (dx, dy, du, dv).
  virtual Taylor expand(const CPoint& p, int order) const = 0;
  virtual int max_order() const { return kMaxTaylorOrder; }
};

class ScalarField {
 public:
  ScalarField(std::shared_ptr<const FieldImpl> impl, Region region, FieldInfo info)
      : impl_(std::move(impl)), region_(std::move(region)), info_(std::move(info)) {}

  double operator()(const CPoint& p) const { return impl_->value(p); }
  double value(const CPoint& p) const { return impl_->value(p); }
  /// Throws RegionError outside the smooth region.
  Taylor expand(const CPoint& p, int order) const;

  const Region& region() const { return region_; }
  const FieldInfo& info() const { return info_; }
  const std::string& name() const { return info_.name; }
  bool exact() const { return info_.exact; }
  int max_order() const { return impl_->max_order(); }

  ScalarField renamed(std::string name) const {
    ScalarField f = *this;
    f.info_.name = std::move(name);
    return f;
  }
  ScalarField with_region(Region r) const {
    ScalarField f = *this;
    f.region_ = std::move(r);
    return f;
  }

 private:
  std::shared_ptr<const FieldImpl> impl_;
  Region region_;
  FieldInfo info_;
};

/// Local coordinates z = z0 + (dx + i dy), w = w0 + (du + i dv) as jets of the given order.
std::pair<CTaylor, CTaylor> local_coordinates(const CPoint& p, int order);

namespace detail {

template <class F>
class ExprImpl final : public FieldImpl {
 public:
  explicit ExprImpl(F f) : f_(std::move(f)) {}
  double value(const CPoint& p) const override {
    return f_(Cplx<double>{p.z.real(), p.z.imag()}, Cplx<double>{p.w.real(), p.w.imag()});
  }
  Taylor expand(const CPoint& p, int order) const override {
    auto [z, w] = local_coordinates(p, order);
    return f_(z, w);
  }

 private:
  F f_;
};

template <class F>
class ComposedImpl final : public FieldImpl {
 public:
  ComposedImpl(std::vector<ScalarField> inputs, F f) : inputs_(std::move(inputs)), f_(std::move(f)) {}
  double value(const CPoint& p) const override {
    std::vector<double> v;
    v.reserve(inputs_.size());
    for (const auto& in : inputs_) v.push_back(in(p));
    return f_(std::span<const double>(v), Cplx<double>{p.z.real(), p.z.imag()},
              Cplx<double>{p.w.real(), p.w.imag()});
  }
  Taylor expand(const CPoint& p, int order) const override {
    std::vector<Taylor> v;
    v.reserve(inputs_.size());
    for (const auto& in : inputs_) v.push_back(in.expand(p, order));
    auto [z, w] = local_coordinates(p, order);
    return f_(std::span<const Taylor>(v), z, w);
  }
  int max_order() const override {
    int m = kMaxTaylorOrder;
    for (const auto& in : inputs_) m = std::min(m, in.max_order());
    return m;
  }

 private:
  std::vector<ScalarField> inputs_;
  F f_;
};

FieldInfo composed_info(const std::string& name, const std::vector<ScalarField>& inputs);
Region composed_region(const std::vector<ScalarField>& inputs);

}  // namespace detail

/// Field from a generic formula `template <class T> T f(const Cplx<T>& z, const Cplx<T>& w)`.
template <class F>
ScalarField expr_field(std::string name, Region region, F f) {
  FieldInfo info;
  info.name = std::move(name);
  return ScalarField(std::make_shared<detail::ExprImpl<F>>(std::move(f)), std::move(region),
                     std::move(info));
}

/// Composition recipe: `template <class T> T f(std::span<const T> in, z, w)` applied to the
/// values (or expansions) of the input fields. Derivatives of the result nest through the
/// inputs' own expansions.
template <class F>
ScalarField compose(std::string name, std::vector<ScalarField> inputs, F f) {
  FieldInfo info = detail::composed_info(name, inputs);
  Region region = detail::composed_region(inputs);
  return ScalarField(std::make_shared<detail::ComposedImpl<F>>(std::move(inputs), std::move(f)),
                     std::move(region), std::move(info));
}

// Common recipes.
ScalarField exp_of(const ScalarField& f);
ScalarField product(const ScalarField& f, const ScalarField& g);
ScalarField sum(const ScalarField& f, const ScalarField& g);
ScalarField scaled(const ScalarField& f, double c);
/// -(-f)^eta; DomainError wherever f >= 0.
ScalarField neg_power(const ScalarField& f, double eta);
/// f * e^{g}
ScalarField times_exp(const ScalarField& f, const ScalarField& g);
ScalarField constant_field(double c);

}  // namespace dfforge
