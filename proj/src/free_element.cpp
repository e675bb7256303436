#include "lipfree/free_element.hpp"

#include "lipfree/error.hpp"
#include "lipfree/linalg.hpp"

#include <algorithm>

namespace lipfree {

FreeElement::FreeElement(SpacePtr space) : space_(std::move(space)) {}

FreeElement::FreeElement(SpacePtr space, const Coefficients& raw) : space_(std::move(space)) {
  for (const auto& [p, a] : raw) {
    if (p >= space_->size())
      throw Error(ErrorCode::UnknownLabel, "point index " + std::to_string(p) + " out of range", {p});
    if (p == space_->base() || a == 0) continue;
    coeffs_.emplace(p, a);
  }
}

FreeElement FreeElement::delta(SpacePtr space, PointIndex p) {
  return FreeElement(std::move(space), Coefficients{{p, Rational(1)}});
}

Rational FreeElement::coeff(PointIndex p) const {
  auto it = coeffs_.find(p);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::vector<Rational> FreeElement::coordinates() const {
  std::vector<Rational> out;
  for (PointIndex p : space_->non_base_points()) out.push_back(coeff(p));
  return out;
}

void FreeElement::require_same_space(const FreeElement& other) const {
  if (space_ != other.space_)
    throw Error(ErrorCode::SpaceMismatch, "elements live over different spaces");
}

FreeElement& FreeElement::operator+=(const FreeElement& other) {
  require_same_space(other);
  for (const auto& [p, a] : other.coeffs_) {
    auto [it, inserted] = coeffs_.emplace(p, a);
    if (!inserted) {
      it->second += a;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& other) {
  require_same_space(other);
  for (const auto& [p, a] : other.coeffs_) {
    auto [it, inserted] = coeffs_.emplace(p, -a);
    if (!inserted) {
      it->second -= a;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

FreeElement& FreeElement::operator*=(const Rational& factor) {
  if (factor == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [p, a] : coeffs_) a *= factor;
  return *this;
}

FreeElement canonicalize(SpacePtr space, const std::map<std::string, Rational>& by_label) {
  FreeElement::Coefficients raw;
  for (const auto& [label, a] : by_label) raw[space->index_of(label)] += a;
  return FreeElement(std::move(space), raw);
}

FreeElement from_coordinates(SpacePtr space, std::span<const Rational> coordinates) {
  const auto points = space->non_base_points();
  if (coordinates.size() != points.size())
    throw Error(ErrorCode::InvalidArgument, "coordinate vector has wrong length");
  FreeElement::Coefficients raw;
  for (std::size_t i = 0; i < points.size(); ++i) raw[points[i]] = coordinates[i];
  return FreeElement(std::move(space), raw);
}

FreeElement Molecule::element(const SpacePtr& space) const {
  if (p == q) throw Error(ErrorCode::DegeneratePair, "molecule endpoints coincide", {p});
  const Rational d = space->dist(p, q);
  return FreeElement(space, {{p, Rational(1 / d)}}) - FreeElement(space, {{q, Rational(1 / d)}});
}

std::vector<Molecule> all_molecules(const PointedMetricSpace& space) {
  std::vector<Molecule> out;
  for (PointIndex p = 0; p < space.size(); ++p)
    for (PointIndex q = 0; q < space.size(); ++q)
      if (p != q) out.push_back({p, q});
  return out;
}

Rational pairing(const FreeElement& mu, std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& [p, a] : mu.coeffs()) total += a * values[p];
  return total;
}

PointSet support(const FreeElement& mu) {
  PointSet s;
  for (const auto& [p, a] : mu.coeffs()) s.insert(s.end(), p);
  return s;
}

std::vector<Rational> point_bump(const PointedMetricSpace& space, PointIndex p) {
  std::vector<Rational> values(space.size(), Rational(0));
  if (space.size() < 2 || p == space.base()) return values;
  PointSet others = space.all_points();
  others.erase(p);
  values[p] = distance_to_set(space, p, others);
  return values;
}

PointSet support_by_functionals(const FreeElement& mu) {
  const auto& space = mu.space();
  PointSet s;
  for (PointIndex p : space.non_base_points())
    if (pairing(mu, point_bump(space, p)) != 0) s.insert(s.end(), p);
  return s;
}

bool is_positive(const FreeElement& mu) {
  return std::all_of(mu.coeffs().begin(), mu.coeffs().end(), [](const auto& e) { return e.second > 0; });
}

bool order_leq(const FreeElement& mu, const FreeElement& lambda) {
  if (mu.space_ptr() != lambda.space_ptr())
    throw Error(ErrorCode::SpaceMismatch, "order comparison across spaces");
  return is_positive(lambda - mu);
}

bool subspace_membership(const FreeElement& mu, const PointSet& k) {
  const PointIndex base = mu.space().base();
  return std::all_of(mu.coeffs().begin(), mu.coeffs().end(),
                     [&](const auto& e) { return e.first == base || k.contains(e.first); });
}

namespace {

// Coordinate vectors delta(p), p in K \ {base}, spanning F_M(K).
linalg::Matrix spanning_set(const PointedMetricSpace& space, const PointSet& k) {
  const auto points = space.non_base_points();
  linalg::Matrix rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!k.contains(points[i])) continue;
    linalg::Vector v(points.size(), Rational(0));
    v[i] = 1;
    rows.push_back(std::move(v));
  }
  return rows;
}

}  // namespace

bool intersection_property_check(const PointedMetricSpace& space, const std::vector<PointSet>& ks) {
  if (ks.empty()) throw Error(ErrorCode::EmptyFamily, "intersection over an empty family");
  const std::size_t dim = space.size() - 1;

  linalg::Matrix left = spanning_set(space, ks.front());
  for (std::size_t i = 1; i < ks.size(); ++i)
    left = linalg::intersect_spans(left, spanning_set(space, ks[i]), dim);

  PointSet common = ks.front();
  for (std::size_t i = 1; i < ks.size(); ++i)
    std::erase_if(common, [&](PointIndex p) { return !ks[i].contains(p); });
  const linalg::Matrix right = spanning_set(space, common);

  if (dim == 0) return true;
  return linalg::same_span(left, right, dim);
}

}  // namespace lipfree
