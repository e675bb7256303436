#include "lipfree/norm.hpp"

#include "lipfree/error.hpp"
#include "lipfree/linalg.hpp"
#include "lipfree/simplex.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace lipfree {

namespace {

using lp::Bound;
using lp::LinearProgram;
using lp::Sense;
using lp::Term;

// Variables f(p) for non-base p, with var index looked up in `var_of`.
struct DualModel {
  LinearProgram program;
  std::vector<std::size_t> var_of;  // by point; kNone-like for base
  static constexpr std::size_t kBase = static_cast<std::size_t>(-1);

  std::vector<Term> difference(PointIndex x, PointIndex y) const {
    std::vector<Term> terms;
    if (var_of[x] != kBase) terms.push_back({var_of[x], Rational(1)});
    if (var_of[y] != kBase) terms.push_back({var_of[y], Rational(-1)});
    return terms;
  }
};

DualModel build_dual(const PointedMetricSpace& space, const DualOptions& options) {
  DualModel model;
  model.var_of.assign(space.size(), DualModel::kBase);
  for (PointIndex p : space.non_base_points())
    model.var_of[p] = model.program.add_variable(options.nonnegative ? Bound::NonNegative : Bound::Free);

  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  for (PointIndex x = 0; x < space.size(); ++x)
    for (PointIndex y = 0; y < space.size(); ++y)
      if (x != y) pairs.emplace_back(x, y);
  if (options.shuffle_seed != 0) {
    std::mt19937_64 rng(options.shuffle_seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
  }
  for (auto [x, y] : pairs) model.program.add_constraint(model.difference(x, y), Sense::LessEqual, space.dist(x, y));
  for (const auto& [p, value] : options.fixed) {
    if (p == space.base()) {
      if (value != 0) throw Error(ErrorCode::BaseValueNonzero, "fixed value at the base point must be 0");
      continue;
    }
    model.program.add_constraint({{model.var_of.at(p), Rational(1)}}, Sense::Equal, value);
  }
  return model;
}

LipFunction function_from(const SpacePtr& space, const DualModel& model, const std::vector<Rational>& x) {
  std::vector<Rational> values(space->size(), Rational(0));
  for (PointIndex p = 0; p < space->size(); ++p)
    if (model.var_of[p] != DualModel::kBase) values[p] = x[model.var_of[p]];
  return LipFunction(space, std::move(values));
}

void set_pairing_objective(DualModel& model, const FreeElement& mu, const Rational& sign = 1) {
  for (const auto& [p, a] : mu.coeffs()) model.program.set_objective(model.var_of[p], sign * a);
}

std::vector<Term> pairing_terms(const DualModel& model, const FreeElement& mu) {
  std::vector<Term> terms;
  for (const auto& [p, a] : mu.coeffs()) terms.push_back({model.var_of[p], a});
  return terms;
}

}  // namespace

DualResult free_norm_dual(const FreeElement& mu, const DualOptions& options) {
  const SpacePtr& space = mu.space_ptr();
  if (mu.is_zero() && options.fixed.empty()) return {Rational(0), LipFunction::zero(space)};
  DualModel model = build_dual(*space, options);
  set_pairing_objective(model, mu);
  const auto solution = lp::maximize(model.program);
  if (solution.status == lp::Status::Infeasible)
    throw Error(ErrorCode::InvalidArgument, "prescribed values admit no 1-Lipschitz extension");
  verify(solution.status == lp::Status::Optimal, "dual norm problem is unbounded");
  return {solution.value, function_from(space, model, solution.x)};
}

Rational min_pairing_nonnegative(const FreeElement& mu) {
  DualOptions options;
  options.nonnegative = true;
  return -free_norm_dual(-mu, options).value;
}

PrimalResult free_norm_primal(const FreeElement& mu, std::uint64_t shuffle_seed) {
  const SpacePtr& space = mu.space_ptr();
  if (mu.is_zero()) return {Rational(0), {}};
  LinearProgram program;
  std::vector<Molecule> arcs = all_molecules(*space);
  if (shuffle_seed != 0) {
    std::mt19937_64 rng(shuffle_seed);
    std::shuffle(arcs.begin(), arcs.end(), rng);
  }
  std::vector<std::vector<Term>> balance(space->size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto [x, y] = arcs[a];
    const std::size_t var = program.add_variable(Bound::NonNegative, space->dist(x, y));
    balance[x].push_back({var, Rational(1)});
    balance[y].push_back({var, Rational(-1)});
  }
  for (PointIndex p : space->non_base_points()) program.add_constraint(balance[p], Sense::Equal, mu.coeff(p));

  const auto solution = lp::minimize(program);
  verify(solution.status == lp::Status::Optimal, "transport problem is not solvable");
  PrimalResult result{solution.value, {}};
  for (std::size_t a = 0; a < arcs.size(); ++a)
    if (solution.x[a] != 0)
      result.decomposition.push_back({arcs[a], Rational(solution.x[a] * space->dist(arcs[a].p, arcs[a].q))});
  std::sort(result.decomposition.begin(), result.decomposition.end(),
            [](const auto& l, const auto& r) { return l.molecule < r.molecule; });
  return result;
}

FreeElement reconstruct(const SpacePtr& space, const Decomposition& decomposition) {
  FreeElement total(space);
  for (const auto& [m, a] : decomposition) total += a * m.element(space);
  return total;
}

Rational l1_mass(const Decomposition& decomposition) {
  Rational total = 0;
  for (const auto& term : decomposition) total += abs_value(term.coeff);
  return total;
}

NormCertificate free_norm(const FreeElement& mu) {
  auto dual = free_norm_dual(mu);
  auto primal = free_norm_primal(mu);
  verify(dual.value == primal.value, "duality gap between transport and Lipschitz problems");
  NormCertificate certificate{dual.value, std::move(dual.witness), std::move(primal.decomposition)};
  verify(check_certificate(mu, certificate), "norm certificate does not verify");
  return certificate;
}

bool check_certificate(const FreeElement& mu, const NormCertificate& certificate) {
  if (certificate.dual_witness.space_ptr() != mu.space_ptr()) return false;
  return lip_constant(certificate.dual_witness) <= 1 && pairing(mu, certificate.dual_witness) == certificate.value &&
         reconstruct(mu.space_ptr(), certificate.primal_witness) == mu &&
         l1_mass(certificate.primal_witness) == certificate.value;
}

Rational positive_norm(const FreeElement& mu) {
  if (!is_positive(mu)) throw Error(ErrorCode::NotPositive, "element is not positive");
  Rational total = 0;
  for (const auto& [p, a] : mu.coeffs()) total += a * mu.space().dist(p, mu.space().base());
  return total;
}

FaceReport norming_face(const LipFunction& f, std::optional<Molecule> nominal) {
  const auto& space = f.space();
  if (lip_constant(f) > 1) throw Error(ErrorCode::NotInUnitBall, "norming function has Lipschitz constant > 1");
  std::vector<Molecule> tight;
  for (const auto& m : all_molecules(space))
    if (f(m.p) - f(m.q) == space.dist(m.p, m.q)) tight.push_back(m);
  if (tight.empty()) throw Error(ErrorCode::EmptyFace, "no element of the unit ball is normed by f");

  const Molecule chosen = nominal.value_or(tight.front());
  verify(std::find(tight.begin(), tight.end(), chosen) != tight.end(), "nominal normer is not in the face");

  linalg::Matrix differences;
  const auto base_coords = chosen.element(f.space_ptr()).coordinates();
  std::optional<FreeElement> distinct;
  for (const auto& m : tight) {
    if (m == chosen) continue;
    auto element = m.element(f.space_ptr());
    auto coords = element.coordinates();
    for (std::size_t k = 0; k < coords.size(); ++k) coords[k] -= base_coords[k];
    differences.push_back(std::move(coords));
    if (!distinct) distinct = std::move(element);
  }
  const std::size_t dim = differences.empty() ? 0 : linalg::rank(differences);

  FaceReport report{f, tight, chosen.element(f.space_ptr()), dim == 0, dim, std::move(distinct)};
  verify(report.is_unique_normer == (tight.size() == 1), "face dimension disagrees with tight molecule count");
  return report;
}

std::map<PointIndex, ValueRange> face_coordinate_ranges(const LipFunction& f) {
  const SpacePtr& space = f.space_ptr();
  const auto molecules = all_molecules(*space);
  LinearProgram program;
  std::vector<Term> mass, value;
  std::vector<FreeElement> elements;
  for (const auto& m : molecules) {
    const std::size_t var = program.add_variable();
    mass.push_back({var, Rational(1)});
    value.push_back({var, Rational((f(m.p) - f(m.q)) / space->dist(m.p, m.q))});
    elements.push_back(m.element(space));
  }
  program.add_constraint(mass, Sense::Equal, Rational(1));
  program.add_constraint(value, Sense::Equal, Rational(1));

  std::map<PointIndex, ValueRange> ranges;
  for (PointIndex p : space->non_base_points()) {
    for (std::size_t v = 0; v < molecules.size(); ++v) program.set_objective(v, elements[v].coeff(p));
    const auto hi = lp::maximize(program);
    if (hi.status == lp::Status::Infeasible) throw Error(ErrorCode::EmptyFace, "no element is normed by f");
    const auto lo = lp::minimize(program);
    ranges[p] = {lo.value, hi.value};
  }
  return ranges;
}

NormerFace normers_of(const FreeElement& mu) {
  if (mu.is_zero()) throw Error(ErrorCode::ZeroElement, "every function norms the zero element");
  const SpacePtr& space = mu.space_ptr();
  DualResult best = free_norm_dual(mu);

  DualModel model = build_dual(*space, {});
  model.program.add_constraint(pairing_terms(model, mu), Sense::Equal, best.value);
  auto optimize_over_face = [&](const std::vector<Term>& objective, bool maximize) {
    for (std::size_t v = 0; v < model.program.num_variables(); ++v) model.program.set_objective(v, 0);
    for (const auto& t : objective) model.program.set_objective(t.var, t.coeff);
    auto s = maximize ? lp::maximize(model.program) : lp::minimize(model.program);
    verify(s.status == lp::Status::Optimal, "optimal face problem failed");
    return s.value;
  };

  NormerFace face{best.value, best.witness, {}, {}};
  for (PointIndex p : space->non_base_points()) {
    const std::vector<Term> objective{{model.var_of[p], Rational(1)}};
    face.ranges[p] = {optimize_over_face(objective, false), optimize_over_face(objective, true)};
  }
  face.ranges[space->base()] = {Rational(0), Rational(0)};

  // Only pairs tight at the sample optimum can be tight at every optimum.
  for (const auto& m : all_molecules(*space)) {
    if (best.witness(m.p) - best.witness(m.q) != space->dist(m.p, m.q)) continue;
    const auto terms = model.difference(m.p, m.q);
    const Rational lowest = terms.empty() ? Rational(0) : optimize_over_face(terms, false);
    if (lowest == space->dist(m.p, m.q)) face.always_tight.emplace_back(m.p, m.q);
  }

  if (is_positive(mu)) {
    for (const auto& [p, a] : mu.coeffs()) {
      const auto& range = face.ranges.at(p);
      verify(range.fixed() && range.min == space->dist(p, space->base()),
             "a normer of a positive element differs from rho on its support");
    }
  }
  return face;
}

}  // namespace lipfree
