#pragma once

#include "lipfree/metric_space.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace lipfree {

/// Finitely supported element sum_p a_p delta(p) of the free space. The
/// coefficient map never stores zeros and never stores the base point
/// (delta(base) = 0), so the representation is unique.
class FreeElement {
 public:
  using Coefficients = std::map<PointIndex, Rational>;

  explicit FreeElement(SpacePtr space);
  /// Drops zero and base-point coefficients.
  FreeElement(SpacePtr space, const Coefficients& raw);

  static FreeElement delta(SpacePtr space, PointIndex p);

  const PointedMetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Coefficients& coeffs() const { return coeffs_; }
  Rational coeff(PointIndex p) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Dense coordinates over space().non_base_points().
  std::vector<Rational> coordinates() const;

  FreeElement& operator+=(const FreeElement& other);
  FreeElement& operator-=(const FreeElement& other);
  FreeElement& operator*=(const Rational& factor);

  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
  friend FreeElement operator-(FreeElement a) { return a *= Rational(-1); }
  friend FreeElement operator*(const Rational& c, FreeElement a) { return a *= c; }
  friend FreeElement operator*(FreeElement a, const Rational& c) { return a *= c; }
  friend FreeElement operator/(FreeElement a, const Rational& c) { return a *= Rational(1 / c); }

  /// Same space object and same coefficients.
  friend bool operator==(const FreeElement& a, const FreeElement& b) {
    return a.space_ == b.space_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_same_space(const FreeElement& other) const;

  SpacePtr space_;
  Coefficients coeffs_;
};

/// Builds an element from a label-keyed map; throws UnknownLabel.
FreeElement canonicalize(SpacePtr space, const std::map<std::string, Rational>& by_label);

/// Element from dense coordinates over space->non_base_points().
FreeElement from_coordinates(SpacePtr space, std::span<const Rational> coordinates);

/// Elementary molecule m_pq = (delta(p) - delta(q)) / d(p,q).
struct Molecule {
  PointIndex p;
  PointIndex q;

  FreeElement element(const SpacePtr& space) const;
  friend bool operator==(const Molecule&, const Molecule&) = default;
  friend auto operator<=>(const Molecule&, const Molecule&) = default;
};

/// Every ordered pair p != q.
std::vector<Molecule> all_molecules(const PointedMetricSpace& space);

/// <mu, f> for a function given by its values at every point.
Rational pairing(const FreeElement& mu, std::span<const Rational> values);

PointSet support(const FreeElement& mu);

/// Second route to the support: p belongs to it iff the nonnegative 1-Lipschitz
/// bump supported on {p} pairs nontrivially with mu.
PointSet support_by_functionals(const FreeElement& mu);

/// Values of the bump min_{x != p} d(p,x) at p, 0 elsewhere. Requires p != base.
std::vector<Rational> point_bump(const PointedMetricSpace& space, PointIndex p);

bool is_positive(const FreeElement& mu);

/// mu <= lambda, i.e. lambda - mu is positive; throws SpaceMismatch.
bool order_leq(const FreeElement& mu, const FreeElement& lambda);

/// mu lies in the span of delta(K); equivalently supp(mu) is inside K ∪ {base}.
bool subspace_membership(const FreeElement& mu, const PointSet& k);

/// Compares the subspace intersection of the F_M(K_i), computed by exact linear
/// algebra on spanning sets, with F_M(intersection of the K_i). Throws EmptyFamily.
bool intersection_property_check(const PointedMetricSpace& space, const std::vector<PointSet>& ks);

}  // namespace lipfree
