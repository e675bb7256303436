#pragma once

#include "lipfree/free_element.hpp"

#include <map>
#include <vector>

namespace lipfree {

/// Member of Lip_0(M): a total function with value 0 at the base point.
class LipFunction {
 public:
  /// Throws BaseValueNonzero or InvalidArgument (wrong length).
  LipFunction(SpacePtr space, std::vector<Rational> values);
  static LipFunction zero(SpacePtr space);

  const PointedMetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator()(PointIndex x) const { return values_[x]; }

  friend bool operator==(const LipFunction& a, const LipFunction& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

/// Member of Lip(M) used as a multiplier; the base value is unconstrained.
class WeightFunction {
 public:
  WeightFunction(SpacePtr space, std::vector<Rational> values);

  const PointedMetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator()(PointIndex x) const { return values_[x]; }

  /// {x : h(x) != 0}
  PointSet support() const;
  /// max |h|
  Rational sup_norm() const;

  friend bool operator==(const WeightFunction& a, const WeightFunction& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

/// Function on a subset S of M containing the base point, vanishing there.
class PartialFunction {
 public:
  /// Throws DomainMismatch when the base is missing, BaseValueNonzero otherwise.
  PartialFunction(SpacePtr space, std::map<PointIndex, Rational> values);

  const PointedMetricSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::map<PointIndex, Rational>& values() const { return values_; }
  PointSet domain() const;
  const Rational& operator()(PointIndex x) const { return values_.at(x); }

  friend bool operator==(const PartialFunction& a, const PartialFunction& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  SpacePtr space_;
  std::map<PointIndex, Rational> values_;
};

/// max over x != y of |f(x)-f(y)|/d(x,y); 0 on fewer than two points.
Rational lip_constant(const PointedMetricSpace& space, std::span<const Rational> values);
Rational lip_constant(const LipFunction& f);
Rational lip_constant(const WeightFunction& h);
/// Lipschitz constant of f on its own domain.
Rational lip_constant(const PartialFunction& f);

inline Rational pairing(const FreeElement& mu, const LipFunction& f) { return pairing(mu, f.values()); }

/// <mu, h> for a weight; the base coefficient is zero so h(base) never contributes.
inline Rational pairing(const FreeElement& mu, const WeightFunction& h) { return pairing(mu, h.values()); }

/// rho(x) = d(x, base).
LipFunction rho(const SpacePtr& space);

/// Lambda_r(x): d(x,0) up to r, 2r - d(x,0) up to 2r, 0 beyond. Throws NonpositiveRadius.
WeightFunction truncate_lambda_r(const SpacePtr& space, const Rational& r);

/// f_r = max{min{f, L Lambda_r}, -L Lambda_r} with L the Lipschitz constant of f.
LipFunction truncate_f_r(const LipFunction& f, const Rational& r);

/// f_pq(x) = (d(p,q)/2) (d(x,q)-d(x,p)) / (d(x,q)+d(x,p)) + C, with C making f_pq(base) = 0.
/// Throws DegeneratePair; verifies lip constant 1 and <m_pq, f_pq> = 1.
LipFunction f_pq(const SpacePtr& space, PointIndex p, PointIndex q);

/// Largest 1-Lipschitz extension f_I(x) = min over the domain of f(q) + d(q,x).
/// Throws NotOneLipschitzOnDomain.
LipFunction mcshane_extend(const PartialFunction& f);

/// h(x) = max{1 - d(x,S)/r, 0}. Throws EmptySet or NonpositiveRadius.
WeightFunction bump_h(const SpacePtr& space, const PointSet& s, const Rational& r);

/// ||h||_inf + rad(supp h) ||h||_L, the bound on the norm of T_h.
Rational multiplier_bound(const WeightFunction& h);

/// T_h(f) = f h on K, 0 off K. K must contain the base point and supp(h), else
/// SupportNotContained. Verifies the Lipschitz bound of the multiplication operator.
LipFunction apply_T_h(const LipFunction& f, const WeightFunction& h, const PointSet& k);
LipFunction apply_T_h(const LipFunction& f, const WeightFunction& h);

/// W_h(mu), the element with <W_h mu, f> = <mu, T_h f>; coefficients a_p h(p).
FreeElement weight_element(const FreeElement& mu, const WeightFunction& h);

}  // namespace lipfree
