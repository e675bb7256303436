#pragma once

#include "lipfree/norm.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace lipfree {

enum class Verdict { Exposed, NotExtreme };

std::string_view verdict_name(Verdict verdict);

/// m_pq written as the midpoint of two distinct norm-one elements u and v lying on
/// the segment between m_px and m_xq for an interior point x of [p,q].
struct MidpointDecomposition {
  PointIndex interior;
  FreeElement u;
  FreeElement v;
  NormCertificate u_norm;
  NormCertificate v_norm;
};

struct ExposednessVerdict {
  Molecule molecule;
  Segment segment;
  bool segment_trivial = false;
  std::optional<LipFunction> exposing_function;  // f_pq when the segment is trivial
  FaceReport face;                                // norming face of f_pq
  Verdict verdict = Verdict::NotExtreme;
  std::optional<MidpointDecomposition> counterexample_decomposition;
};

/// Exposed iff [p,q] = {p,q}. Exposed verdicts are certified by the singleton face
/// of f_pq; the others by an explicit midpoint decomposition. Throws DegeneratePair.
ExposednessVerdict classify_molecule(const SpacePtr& space, PointIndex p, PointIndex q);

/// Every tight molecule of f_pq has both endpoints in [p,q]. Throws DegeneratePair.
bool normers_support_check(const SpacePtr& space, PointIndex p, PointIndex q);

/// 0 and delta(x)/d(x,0) for x != base, each checked to be a vertex of
/// {a >= 0 : sum a_p d(p,0) <= 1}.
std::vector<FreeElement> positive_ball_extremes(const SpacePtr& space);

struct PositiveSplit {
  FreeElement first;   // W_h(mu) / ||W_h(mu)||
  FreeElement second;  // (mu - W_h(mu)) / ||mu - W_h(mu)||
  Rational t;          // mu = t first + (1-t) second
};

/// Splits a norm-one positive element with at least two support points into a
/// nontrivial convex combination of two positive norm-one elements, using the
/// weight bump around B(a, d(a,b)/3) for the first two support points a, b.
PositiveSplit split_positive(const FreeElement& mu);

/// N(f) = <mu + lambda, f_I> for f on S = supp(mu) ∪ {0}.
Rational N_value(const FreeElement& lambda, const FreeElement& mu, const PartialFunction& f);

/// S = supp(mu) ∪ {base}.
PointSet perturbation_domain(const FreeElement& mu);

struct NMaximum {
  PartialFunction f_star;
  Rational value;
};

/// Maximizes N over the unit ball of Lip_0(S) by one LP, and checks the optimum
/// equals ||mu + lambda||. Throws NotPositive.
NMaximum maximize_N(const FreeElement& lambda, const FreeElement& mu);

/// A_K = points whose McShane infimum is attained exactly on K, keyed by K.
std::map<PointSet, PointSet> ak_partition(const PartialFunction& f);

struct PerturbationWitness {
  FreeElement lambda;
  FreeElement mu;
  PartialFunction f_star;
  LipFunction extension;  // f_I of f_star
  PointSet k;
  PointSet cell;          // supp(lambda) ∩ A_K
  std::array<PointIndex, 3> chosen_points;
  Rational epsilon;
  Rational r;
  std::array<Rational, 3> c;
  WeightFunction h;
  FreeElement v;
  Rational norm;          // ||lambda + mu|| = ||lambda ± v + mu||
};

/// Nonzero v with lambda ± v >= 0 and ||lambda ± v + mu|| = ||lambda + mu||, built
/// from a cell A_K holding three points of supp(lambda); absent when no cell does.
/// Every identity is re-verified (InternalVerificationFailure). Throws NotPositive.
std::optional<PerturbationWitness> almost_positive_witness(const FreeElement& lambda, const FreeElement& mu);

/// Independent re-check of a witness, computing every norm by both LP routes.
bool check_witness(const PerturbationWitness& witness);

/// Brute-force vertex set of the unit ball conv{m_xy}: the molecules that are not
/// convex combinations of the others (one feasibility LP per molecule).
std::vector<Molecule> unit_ball_vertices(const SpacePtr& space);

}  // namespace lipfree
