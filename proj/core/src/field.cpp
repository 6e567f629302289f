#include "dfforge/field.hpp"

#include <algorithm>
#include <cmath>

#include "dfforge/errors.hpp"

namespace dfforge {

bool Region::contains(const CPoint& p) const {
  const Vec4 r = p.real();
  for (int i = 0; i < 4; ++i)
    if (r[i] < lo[i] || r[i] > hi[i]) return false;
  return !(excluded && excluded(p));
}

bool Region::bounded() const {
  for (int i = 0; i < 4; ++i)
    if (lo[i] < -1e299 || hi[i] > 1e299) return false;
  return true;
}

Vec4 Region::center() const { return 0.5 * (lo + hi); }

double Region::diameter() const { return norm(hi - lo); }

Region Region::intersect(const Region& o) const {
  Region r;
  for (int i = 0; i < 4; ++i) {
    r.lo[i] = std::max(lo[i], o.lo[i]);
    r.hi[i] = std::min(hi[i], o.hi[i]);
  }
  if (excluded && o.excluded) {
    auto a = excluded, b = o.excluded;
    r.excluded = [a, b](const CPoint& p) { return a(p) || b(p); };
    r.excluded_desc = excluded_desc + "; " + o.excluded_desc;
  } else if (excluded) {
    r.excluded = excluded;
    r.excluded_desc = excluded_desc;
  } else if (o.excluded) {
    r.excluded = o.excluded;
    r.excluded_desc = o.excluded_desc;
  }
  return r;
}

Taylor ScalarField::expand(const CPoint& p, int order) const {
  if (!region_.contains(p))
    throw RegionError("point outside the smooth region of field '" + info_.name + "'");
  if (order > impl_->max_order())
    throw NumericalError("field '" + info_.name + "' supports expansions up to order " +
                         std::to_string(impl_->max_order()));
  return impl_->expand(p, order);
}

std::pair<CTaylor, CTaylor> local_coordinates(const CPoint& p, int order) {
  CTaylor z{Taylor::variable(4, order, 0, p.z.real()), Taylor::variable(4, order, 1, p.z.imag())};
  CTaylor w{Taylor::variable(4, order, 2, p.w.real()), Taylor::variable(4, order, 3, p.w.imag())};
  return {std::move(z), std::move(w)};
}

namespace detail {

FieldInfo composed_info(const std::string& name, const std::vector<ScalarField>& inputs) {
  FieldInfo info;
  info.name = name;
  int depth = 0;
  for (const auto& in : inputs) {
    info.exact = info.exact && in.exact();
    depth = std::max(depth, in.info().nesting);
  }
  info.nesting = depth + 1;
  info.accuracy = info.exact ? "jet arithmetic (rounding only)"
                             : "finite differences below nesting level " + std::to_string(info.nesting);
  return info;
}

Region composed_region(const std::vector<ScalarField>& inputs) {
  Region r = Region::everywhere();
  for (const auto& in : inputs) r = r.intersect(in.region());
  return r;
}

}  // namespace detail

ScalarField exp_of(const ScalarField& f) {
  return compose("exp(" + f.name() + ")", {f},
                 [](auto in, const auto&, const auto&) { return exp(in[0]); });
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
  return compose(f.name() + "*" + g.name(), {f, g},
                 [](auto in, const auto&, const auto&) { return in[0] * in[1]; });
}

ScalarField sum(const ScalarField& f, const ScalarField& g) {
  return compose(f.name() + "+" + g.name(), {f, g},
                 [](auto in, const auto&, const auto&) { return in[0] + in[1]; });
}

ScalarField scaled(const ScalarField& f, double c) {
  return compose(std::to_string(c) + "*" + f.name(), {f},
                 [c](auto in, const auto&, const auto&) { return in[0] * c; });
}

ScalarField times_exp(const ScalarField& f, const ScalarField& g) {
  return compose(f.name() + "*exp(" + g.name() + ")", {f, g},
                 [](auto in, const auto&, const auto&) { return in[0] * exp(in[1]); });
}

ScalarField neg_power(const ScalarField& f, double eta) {
  return compose("-(-" + f.name() + ")^" + std::to_string(eta), {f},
                 [eta](auto in, const auto&, const auto&) {
                   if (!(value_of(in[0]) < 0.0))
                     throw DomainError("(-f)^eta requested where f >= 0");
                   return -pow(-in[0], eta);
                 });
}

ScalarField constant_field(double c) {
  return expr_field("const", Region::everywhere(), [c](const auto& z, const auto&) {
    auto out = z.re;
    out = out * 0.0 + c;
    return out;
  });
}

}  // namespace dfforge
