#pragma once

#include "lipfree/lipschitz.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace lipfree {

/// Extra structure on the dual problem max <mu,f> over the 1-Lipschitz ball of Lip_0.
struct DualOptions {
  bool nonnegative = false;                  // restrict to f >= 0
  std::map<PointIndex, Rational> fixed;      // prescribed values f(p)
  std::uint64_t shuffle_seed = 0;            // nonzero: permute the constraint order
};

struct DualResult {
  Rational value;
  LipFunction witness;
};

/// ||mu|| as max <mu,f> over f(0) = 0, |f(x)-f(y)| <= d(x,y); returns an optimal vertex.
DualResult free_norm_dual(const FreeElement& mu, const DualOptions& options = {});

/// min <mu,f> over nonnegative f in the unit ball of Lip_0. Zero iff mu is positive.
Rational min_pairing_nonnegative(const FreeElement& mu);

struct WeightedMolecule {
  Molecule molecule;
  Rational coeff;
};
using Decomposition = std::vector<WeightedMolecule>;

struct PrimalResult {
  Rational value;
  Decomposition decomposition;
};

/// ||mu|| as the minimum transport cost sum c_xy d(x,y) over flows whose net
/// outflow at each non-base point p is a_p; the flow becomes the molecule
/// decomposition sum (c_xy d(x,y)) m_xy.
PrimalResult free_norm_primal(const FreeElement& mu, std::uint64_t shuffle_seed = 0);

FreeElement reconstruct(const SpacePtr& space, const Decomposition& decomposition);
/// sum |a_i|
Rational l1_mass(const Decomposition& decomposition);

struct NormCertificate {
  Rational value;
  LipFunction dual_witness;
  Decomposition primal_witness;
};

/// Both witnesses; throws InternalVerificationFailure on a nonzero duality gap.
NormCertificate free_norm(const FreeElement& mu);

/// Exact check of a certificate: witness is 1-Lipschitz in Lip_0, <mu,f> = value,
/// the decomposition reconstructs mu and has l1 mass equal to value.
bool check_certificate(const FreeElement& mu, const NormCertificate& certificate);

/// sum a_p d(p,0); equals ||mu|| for positive mu. Throws NotPositive.
Rational positive_norm(const FreeElement& mu);

struct FaceReport {
  LipFunction norming_function;
  std::vector<Molecule> tight_molecules;  // m_xy with f(x) - f(y) = d(x,y)
  FreeElement nominal_normer;
  bool is_unique_normer = false;
  std::size_t face_dimension = 0;
  std::optional<FreeElement> sample_distinct_normer;
};

/// The face {mu in B : <mu,f> = 1} of the unit ball, which is the convex hull of
/// the tight molecules. `nominal` defaults to the first tight molecule. Throws
/// NotInUnitBall when ||f||_L > 1 and EmptyFace when the face is empty.
FaceReport norming_face(const LipFunction& f, std::optional<Molecule> nominal = std::nullopt);

struct ValueRange {
  Rational min;
  Rational max;
  bool fixed() const { return min == max; }
};

/// LP route to the same face: for each coordinate p, the range of mu_p over
/// {sum w_m m : w >= 0, sum w = 1, sum w <m,f> = 1}. Keyed by non-base point.
std::map<PointIndex, ValueRange> face_coordinate_ranges(const LipFunction& f);

/// Optimal face of the dual problem for mu.
struct NormerFace {
  Rational value;
  LipFunction sample;                                       // one optimal f
  std::map<PointIndex, ValueRange> ranges;                  // f(p) over all normers
  std::vector<std::pair<PointIndex, PointIndex>> always_tight;  // f(x)-f(y) = d(x,y) for every normer
};

/// Throws ZeroElement. For positive mu verifies every normer equals rho on supp(mu).
NormerFace normers_of(const FreeElement& mu);

}  // namespace lipfree
