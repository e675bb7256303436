#include "lipfree/lipschitz.hpp"

#include "lipfree/error.hpp"

#include <algorithm>

namespace lipfree {

namespace {

void require_length(const PointedMetricSpace& space, std::size_t n) {
  if (n != space.size())
    throw Error(ErrorCode::InvalidArgument,
                "function has " + std::to_string(n) + " values on a " + std::to_string(space.size()) +
                    "-point space");
}

void require_positive_radius(const Rational& r) {
  if (r <= 0) throw Error(ErrorCode::NonpositiveRadius, "radius must be positive");
}

}  // namespace

LipFunction::LipFunction(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  require_length(*space_, values_.size());
  if (values_[space_->base()] != 0)
    throw Error(ErrorCode::BaseValueNonzero, "function does not vanish at the base point");
}

LipFunction LipFunction::zero(SpacePtr space) {
  std::vector<Rational> values(space->size(), Rational(0));
  return LipFunction(std::move(space), std::move(values));
}

WeightFunction::WeightFunction(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  require_length(*space_, values_.size());
}

PointSet WeightFunction::support() const {
  PointSet s;
  for (PointIndex x = 0; x < values_.size(); ++x)
    if (values_[x] != 0) s.insert(s.end(), x);
  return s;
}

Rational WeightFunction::sup_norm() const {
  Rational m = 0;
  for (const auto& v : values_) m = std::max(m, abs_value(v));
  return m;
}

PartialFunction::PartialFunction(SpacePtr space, std::map<PointIndex, Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  auto it = values_.find(space_->base());
  if (it == values_.end())
    throw Error(ErrorCode::DomainMismatch, "partial function domain must contain the base point");
  if (it->second != 0)
    throw Error(ErrorCode::BaseValueNonzero, "partial function does not vanish at the base point");
  if (!values_.empty() && values_.rbegin()->first >= space_->size())
    throw Error(ErrorCode::InvalidArgument, "partial function defined outside the space");
}

PointSet PartialFunction::domain() const {
  PointSet s;
  for (const auto& [x, v] : values_) s.insert(s.end(), x);
  return s;
}

Rational lip_constant(const PointedMetricSpace& space, std::span<const Rational> values) {
  Rational best = 0;
  for (PointIndex x = 0; x < space.size(); ++x)
    for (PointIndex y = x + 1; y < space.size(); ++y)
      best = std::max(best, Rational(abs_value(values[x] - values[y]) / space.dist(x, y)));
  return best;
}

Rational lip_constant(const LipFunction& f) { return lip_constant(f.space(), f.values()); }
Rational lip_constant(const WeightFunction& h) { return lip_constant(h.space(), h.values()); }

Rational lip_constant(const PartialFunction& f) {
  Rational best = 0;
  const auto& values = f.values();
  for (auto a = values.begin(); a != values.end(); ++a)
    for (auto b = std::next(a); b != values.end(); ++b)
      best = std::max(best, Rational(abs_value(a->second - b->second) / f.space().dist(a->first, b->first)));
  return best;
}

LipFunction rho(const SpacePtr& space) {
  std::vector<Rational> values;
  for (PointIndex x = 0; x < space->size(); ++x) values.push_back(space->dist(x, space->base()));
  return LipFunction(space, std::move(values));
}

WeightFunction truncate_lambda_r(const SpacePtr& space, const Rational& r) {
  require_positive_radius(r);
  std::vector<Rational> values;
  for (PointIndex x = 0; x < space->size(); ++x) {
    const Rational& d = space->dist(x, space->base());
    if (d <= r)
      values.push_back(d);
    else if (d <= 2 * r)
      values.push_back(2 * r - d);
    else
      values.push_back(0);
  }
  return WeightFunction(space, std::move(values));
}

LipFunction truncate_f_r(const LipFunction& f, const Rational& r) {
  const auto lambda = truncate_lambda_r(f.space_ptr(), r);
  const Rational lip = lip_constant(f);
  std::vector<Rational> values;
  for (PointIndex x = 0; x < f.space().size(); ++x) {
    const Rational cap = lip * lambda(x);
    values.push_back(std::max(std::min(f(x), cap), Rational(-cap)));
  }
  return LipFunction(f.space_ptr(), std::move(values));
}

LipFunction f_pq(const SpacePtr& space, PointIndex p, PointIndex q) {
  if (p == q) throw Error(ErrorCode::DegeneratePair, "f_pq needs distinct points", {p});
  const Rational half = space->dist(p, q) / 2;
  auto raw = [&](PointIndex x) {
    const Rational& dq = space->dist(x, q);
    const Rational& dp = space->dist(x, p);
    return Rational(half * (dq - dp) / (dq + dp));
  };
  const Rational shift = raw(space->base());
  std::vector<Rational> values;
  for (PointIndex x = 0; x < space->size(); ++x) values.push_back(raw(x) - shift);
  LipFunction f(space, std::move(values));
  verify(lip_constant(f) == 1, "f_pq is not norm one");
  verify(f(p) - f(q) == space->dist(p, q), "<m_pq, f_pq> != 1");
  return f;
}

LipFunction mcshane_extend(const PartialFunction& f) {
  if (lip_constant(f) > 1)
    throw Error(ErrorCode::NotOneLipschitzOnDomain, "partial function is not 1-Lipschitz");
  const auto& space = f.space();
  std::vector<Rational> values;
  for (PointIndex x = 0; x < space.size(); ++x) {
    auto it = f.values().begin();
    Rational best = it->second + space.dist(it->first, x);
    for (++it; it != f.values().end(); ++it) best = std::min(best, Rational(it->second + space.dist(it->first, x)));
    values.push_back(std::move(best));
  }
  return LipFunction(f.space_ptr(), std::move(values));
}

WeightFunction bump_h(const SpacePtr& space, const PointSet& s, const Rational& r) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "bump around the empty set");
  require_positive_radius(r);
  std::vector<Rational> values;
  for (PointIndex x = 0; x < space->size(); ++x)
    values.push_back(std::max(Rational(1 - distance_to_set(*space, x, s) / r), Rational(0)));
  return WeightFunction(space, std::move(values));
}

Rational multiplier_bound(const WeightFunction& h) {
  return h.sup_norm() + radius(h.space(), h.support()) * lip_constant(h);
}

LipFunction apply_T_h(const LipFunction& f, const WeightFunction& h, const PointSet& k) {
  if (f.space_ptr() != h.space_ptr()) throw Error(ErrorCode::SpaceMismatch, "T_h across spaces");
  if (!k.contains(f.space().base()))
    throw Error(ErrorCode::SupportNotContained, "K must contain the base point");
  for (PointIndex x : h.support())
    if (!k.contains(x))
      throw Error(ErrorCode::SupportNotContained, "supp(h) is not contained in K", {x});
  std::vector<Rational> values;
  for (PointIndex x = 0; x < f.space().size(); ++x)
    values.push_back(k.contains(x) ? Rational(f(x) * h(x)) : Rational(0));
  LipFunction out(f.space_ptr(), std::move(values));
  verify(lip_constant(out) <= multiplier_bound(h) * lip_constant(f), "T_h exceeds its norm bound");
  return out;
}

LipFunction apply_T_h(const LipFunction& f, const WeightFunction& h) {
  return apply_T_h(f, h, f.space().all_points());
}

FreeElement weight_element(const FreeElement& mu, const WeightFunction& h) {
  if (mu.space_ptr() != h.space_ptr()) throw Error(ErrorCode::SpaceMismatch, "W_h across spaces");
  FreeElement::Coefficients raw;
  for (const auto& [p, a] : mu.coeffs()) raw[p] = a * h(p);
  FreeElement out(mu.space_ptr(), raw);
  for (const auto& [p, a] : out.coeffs())
    verify(mu.coeffs().contains(p) && h(p) != 0, "supp(W_h mu) escapes supp(mu) ∩ supp(h)");
  return out;
}

}  // namespace lipfree
