#include "lipfree/extremal.hpp"

#include "lipfree/error.hpp"
#include "lipfree/linalg.hpp"
#include "lipfree/simplex.hpp"

#include <algorithm>

namespace lipfree {

std::string_view verdict_name(Verdict verdict) {
  return verdict == Verdict::Exposed ? "Exposed" : "NotExtreme";
}

namespace {

// Norm-one certificate for a convex combination of molecules that are all tight for f.
NormCertificate certify_on_face(const FreeElement& element, const LipFunction& f, Decomposition decomposition) {
  NormCertificate cert{Rational(1), f, std::move(decomposition)};
  verify(check_certificate(element, cert), "midpoint element is not certified to have norm one");
  return cert;
}

}  // namespace

ExposednessVerdict classify_molecule(const SpacePtr& space, PointIndex p, PointIndex q) {
  if (p == q) throw Error(ErrorCode::DegeneratePair, "molecule endpoints coincide", {p});
  const Molecule molecule{p, q};
  Segment seg = segment(*space, p, q);
  LipFunction f = f_pq(space, p, q);
  FaceReport face = norming_face(f, molecule);

  ExposednessVerdict out{molecule, seg, seg.trivial(), std::nullopt, face, Verdict::NotExtreme, std::nullopt};
  if (out.segment_trivial) {
    verify(face.is_unique_normer && face.nominal_normer == molecule.element(space),
           "f_pq does not expose m_pq although [p,q] is trivial");
    out.exposing_function = std::move(f);
    out.verdict = Verdict::Exposed;
    return out;
  }

  verify(!face.is_unique_normer && face.sample_distinct_normer.has_value(),
         "nontrivial segment but f_pq has a singleton face");
  PointIndex x = p;
  for (PointIndex candidate : seg.members)
    if (candidate != p && candidate != q) {
      x = candidate;
      break;
    }
  // m_pq = t m_px + (1-t) m_xq with t = d(p,x)/d(p,q).
  const Rational t = space->dist(p, x) / space->dist(p, q);
  const Rational s = std::min(t, Rational(1 - t));
  const FreeElement first = Molecule{p, x}.element(space);
  const FreeElement second = Molecule{x, q}.element(space);
  const FreeElement m = molecule.element(space);
  verify(t * first + (1 - t) * second == m, "interior point does not split m_pq");

  FreeElement u = m + s * (first - second);
  FreeElement v = m - s * (first - second);
  auto u_cert = certify_on_face(u, f, {{{p, x}, Rational(t + s)}, {{x, q}, Rational(1 - t - s)}});
  auto v_cert = certify_on_face(v, f, {{{p, x}, Rational(t - s)}, {{x, q}, Rational(1 - t + s)}});
  std::erase_if(u_cert.primal_witness, [](const auto& w) { return w.coeff == 0; });
  std::erase_if(v_cert.primal_witness, [](const auto& w) { return w.coeff == 0; });
  verify(u != v && Rational(1, 2) * (u + v) == m, "midpoint decomposition is invalid");
  out.counterexample_decomposition = MidpointDecomposition{x, std::move(u), std::move(v), std::move(u_cert),
                                                           std::move(v_cert)};
  return out;
}

bool normers_support_check(const SpacePtr& space, PointIndex p, PointIndex q) {
  if (p == q) throw Error(ErrorCode::DegeneratePair, "molecule endpoints coincide", {p});
  const Segment seg = segment(*space, p, q);
  const FaceReport face = norming_face(f_pq(space, p, q));
  return std::all_of(face.tight_molecules.begin(), face.tight_molecules.end(), [&](const Molecule& m) {
    return seg.members.contains(m.p) && seg.members.contains(m.q);
  });
}

std::vector<FreeElement> positive_ball_extremes(const SpacePtr& space) {
  const auto points = space->non_base_points();
  // {a : -a_p <= 0, sum a_p d(p,0) <= 1}
  linalg::Matrix a;
  linalg::Vector b;
  for (std::size_t i = 0; i < points.size(); ++i) {
    linalg::Vector row(points.size(), Rational(0));
    row[i] = -1;
    a.push_back(std::move(row));
    b.push_back(0);
  }
  linalg::Vector mass;
  for (PointIndex p : points) mass.push_back(space->dist(p, space->base()));
  a.push_back(mass);
  b.push_back(1);

  std::vector<FreeElement> out{FreeElement(space)};
  for (PointIndex x : points) out.push_back(FreeElement::delta(space, x) / space->dist(x, space->base()));
  for (const auto& e : out) verify(linalg::is_vertex(a, b, e.coordinates()), "candidate is not a vertex of B+");
  return out;
}

PositiveSplit split_positive(const FreeElement& mu) {
  if (!is_positive(mu)) throw Error(ErrorCode::NotPositive, "split_positive needs a positive element");
  if (positive_norm(mu) != 1) throw Error(ErrorCode::NotNormalized, "split_positive needs norm one");
  if (mu.coeffs().size() < 2) throw Error(ErrorCode::SingletonSupport, "support has fewer than two points");
  const SpacePtr& space = mu.space_ptr();
  auto it = mu.coeffs().begin();
  const PointIndex a = it->first;
  const PointIndex b = std::next(it)->first;
  const Rational r = space->dist(a, b) / 3;

  const WeightFunction h = bump_h(space, closed_ball(*space, a, r), r);
  const FreeElement part = weight_element(mu, h);
  const FreeElement rest = mu - part;
  verify(!part.is_zero() && !rest.is_zero(), "weighting did not split the support");
  verify(is_positive(part) && is_positive(rest), "split parts are not positive");
  const Rational t = positive_norm(part);
  verify(t + positive_norm(rest) == 1, "norms of positive parts are not additive");
  PositiveSplit split{part / t, rest / Rational(1 - t), t};
  verify(t * split.first + (1 - t) * split.second == mu, "split does not reconstruct mu");
  return split;
}

PointSet perturbation_domain(const FreeElement& mu) {
  PointSet s = support(mu);
  s.insert(mu.space().base());
  return s;
}

Rational N_value(const FreeElement& lambda, const FreeElement& mu, const PartialFunction& f) {
  if (f.domain() != perturbation_domain(mu))
    throw Error(ErrorCode::DomainMismatch, "N is defined on functions over supp(mu) ∪ {0}");
  return pairing(mu + lambda, mcshane_extend(f));
}

NMaximum maximize_N(const FreeElement& lambda, const FreeElement& mu) {
  if (!is_positive(lambda)) throw Error(ErrorCode::NotPositive, "lambda must be positive");
  const SpacePtr& space = mu.space_ptr();
  const PointSet s = perturbation_domain(mu);
  const FreeElement total = mu + lambda;

  // f(q) for q in S \ {0}; t_x for x outside S carrying lambda mass, t_x <= f(q) + d(q,x).
  lp::LinearProgram program;
  std::map<PointIndex, std::size_t> f_var, t_var;
  for (PointIndex q : s)
    if (q != space->base()) f_var[q] = program.add_variable(lp::Bound::Free, total.coeff(q));
  for (const auto& [x, a] : lambda.coeffs())
    if (!s.contains(x)) t_var[x] = program.add_variable(lp::Bound::Free, a);
  auto f_terms = [&](PointIndex q, const Rational& sign) {
    std::vector<lp::Term> terms;
    if (auto it = f_var.find(q); it != f_var.end()) terms.push_back({it->second, sign});
    return terms;
  };
  for (PointIndex q : s)
    for (PointIndex q2 : s) {
      if (q == q2) continue;
      auto terms = f_terms(q, 1);
      for (auto& t : f_terms(q2, -1)) terms.push_back(t);
      program.add_constraint(terms, lp::Sense::LessEqual, space->dist(q, q2));
    }
  for (const auto& [x, var] : t_var)
    for (PointIndex q : s) {
      std::vector<lp::Term> terms{{var, Rational(1)}};
      for (auto& t : f_terms(q, -1)) terms.push_back(t);
      program.add_constraint(terms, lp::Sense::LessEqual, space->dist(q, x));
    }

  const auto solution = lp::maximize(program);
  verify(solution.status == lp::Status::Optimal, "N maximization failed");
  std::map<PointIndex, Rational> values{{space->base(), Rational(0)}};
  for (const auto& [q, var] : f_var) values[q] = solution.x[var];
  NMaximum result{PartialFunction(space, std::move(values)), solution.value};
  verify(N_value(lambda, mu, result.f_star) == result.value, "relaxed McShane values are not tight");
  verify(result.value == free_norm_dual(total).value, "max N differs from ||mu + lambda||");
  return result;
}

std::map<PointSet, PointSet> ak_partition(const PartialFunction& f) {
  const LipFunction extension = mcshane_extend(f);
  const auto& space = f.space();
  std::map<PointSet, PointSet> cells;
  for (PointIndex x = 0; x < space.size(); ++x) {
    PointSet k;
    for (const auto& [q, value] : f.values())
      if (value + space.dist(q, x) == extension(x)) k.insert(k.end(), q);
    cells[k].insert(x);
  }
  return cells;
}

namespace {

std::vector<std::string> sorted_labels(const PointedMetricSpace& space, const PointSet& set) {
  std::vector<std::string> labels;
  for (PointIndex x : set) labels.push_back(space.label(x));
  std::sort(labels.begin(), labels.end());
  return labels;
}

std::vector<Rational> product(const WeightFunction& h, const LipFunction& f) {
  std::vector<Rational> out;
  for (PointIndex x = 0; x < f.space().size(); ++x) out.push_back(h(x) * f(x));
  return out;
}

}  // namespace

std::optional<PerturbationWitness> almost_positive_witness(const FreeElement& lambda, const FreeElement& mu) {
  if (!is_positive(lambda)) throw Error(ErrorCode::NotPositive, "lambda must be positive");
  if (lambda.space_ptr() != mu.space_ptr()) throw Error(ErrorCode::SpaceMismatch, "lambda and mu over different spaces");
  const SpacePtr& space = mu.space_ptr();
  if (lambda.coeffs().size() < 3) return std::nullopt;

  NMaximum best = maximize_N(lambda, mu);
  const LipFunction extension = mcshane_extend(best.f_star);
  const PointSet lambda_support = support(lambda);

  std::optional<PointSet> chosen_k;
  PointSet chosen_cell;
  for (const auto& [k, cell] : ak_partition(best.f_star)) {
    PointSet hits;
    std::set_intersection(cell.begin(), cell.end(), lambda_support.begin(), lambda_support.end(),
                          std::inserter(hits, hits.end()));
    if (hits.size() < 3) continue;
    const bool better = !chosen_k || k.size() < chosen_k->size() ||
                        (k.size() == chosen_k->size() && sorted_labels(*space, k) < sorted_labels(*space, *chosen_k));
    if (better) {
      chosen_k = k;
      chosen_cell = std::move(hits);
    }
  }
  if (!chosen_k) return std::nullopt;

  std::vector<PointIndex> ordered(chosen_cell.begin(), chosen_cell.end());
  std::sort(ordered.begin(), ordered.end(),
            [&](PointIndex a, PointIndex b) { return space->label(a) < space->label(b); });
  const std::array<PointIndex, 3> pts{ordered[0], ordered[1], ordered[2]};

  const PointSet& s = best.f_star.domain();
  std::optional<Rational> gap;
  for (PointIndex q : *chosen_k)
    for (PointIndex q2 : s) {
      if (chosen_k->contains(q2)) continue;
      for (PointIndex p : pts) {
        Rational g = (best.f_star(q2) + space->dist(p, q2)) - (best.f_star(q) + space->dist(p, q));
        if (!gap || g < *gap) gap = std::move(g);
      }
    }
  Rational min_pair_distance = 0;
  for (PointIndex x = 0; x < space->size(); ++x)
    for (PointIndex y = x + 1; y < space->size(); ++y)
      if (min_pair_distance == 0 || space->dist(x, y) < min_pair_distance) min_pair_distance = space->dist(x, y);
  const Rational epsilon = gap ? Rational(*gap / 4) : Rational(min_pair_distance / 2);
  verify(epsilon > 0, "cell separation gap is not positive");

  // Shrink r below epsilon and below every distance from a chosen point, so each ball is {p_i}.
  Rational r = epsilon;
  for (PointIndex p : pts)
    for (PointIndex x = 0; x < space->size(); ++x)
      if (x != p) r = std::min(r, space->dist(p, x));
  r /= 2;

  std::array<WeightFunction, 3> bumps{
      bump_h(space, closed_ball(*space, pts[0], r), r),
      bump_h(space, closed_ball(*space, pts[1], r), r),
      bump_h(space, closed_ball(*space, pts[2], r), r),
  };
  for (std::size_t i = 0; i < 3; ++i) {
    verify(closed_ball(*space, pts[i], r) == PointSet{pts[i]}, "ball around a chosen point is not a singleton");
    verify(bumps[i].support() == PointSet{pts[i]} && pairing(lambda, bumps[i]) > 0, "bump does not charge lambda");
  }

  linalg::Matrix system(2, linalg::Vector(3));
  for (std::size_t i = 0; i < 3; ++i) {
    system[0][i] = pairing(lambda, bumps[i]);
    system[1][i] = pairing(lambda, product(bumps[i], extension));
  }
  const auto kernel = linalg::nullspace(system, 3);
  verify(!kernel.empty(), "2x3 system has trivial kernel");
  std::array<Rational, 3> c{kernel[0][0], kernel[0][1], kernel[0][2]};
  std::optional<Rational> scale;
  for (std::size_t i = 0; i < 3; ++i)
    if (c[i] != 0) {
      Rational allowed = 1 / (bumps[i].sup_norm() * abs_value(c[i]));
      if (!scale || allowed < *scale) scale = std::move(allowed);
    }
  for (auto& ci : c) ci *= *scale;

  std::vector<Rational> h_values(space->size(), Rational(0));
  for (std::size_t i = 0; i < 3; ++i)
    for (PointIndex x = 0; x < space->size(); ++x) h_values[x] += c[i] * bumps[i](x);
  WeightFunction h(space, std::move(h_values));
  FreeElement v = weight_element(lambda, h);

  PerturbationWitness witness{lambda, mu, best.f_star, extension, *chosen_k, chosen_cell, pts, epsilon, r,
                              c, std::move(h), std::move(v), best.value};

  const FreeElement& w = witness.v;
  verify(!w.is_zero(), "perturbation v vanishes");
  verify(is_positive(lambda + w) && is_positive(lambda - w), "lambda ± v is not positive");
  verify(pairing(lambda, witness.h) == 0, "<lambda, h> != 0");
  verify(pairing(lambda, product(witness.h, extension)) == 0, "<lambda, h f_I> != 0");
  verify(pairing(w, extension) == 0, "<v, f_I> != 0");
  verify(free_norm_dual(lambda + w + mu).value == witness.norm, "||lambda + v + mu|| != ||lambda + mu||");
  verify(free_norm_dual(lambda - w + mu).value == witness.norm, "||lambda - v + mu|| != ||lambda + mu||");
  return witness;
}

bool check_witness(const PerturbationWitness& w) {
  const auto& lam = w.lambda;
  if (w.v.is_zero() || !is_positive(lam + w.v) || !is_positive(lam - w.v)) return false;
  if (pairing(lam, w.h) != 0 || pairing(w.v, w.extension) != 0) return false;
  for (const auto& c : w.c)
    if (abs_value(c) > 1) return false;
  const Rational target = free_norm(lam + w.mu).value;
  return target == w.norm && free_norm(lam + w.v + w.mu).value == target &&
         free_norm(lam - w.v + w.mu).value == target;
}

std::vector<Molecule> unit_ball_vertices(const SpacePtr& space) {
  const auto molecules = all_molecules(*space);
  std::vector<FreeElement> elements;
  for (const auto& m : molecules) elements.push_back(m.element(space));
  const auto points = space->non_base_points();

  std::vector<Molecule> vertices;
  for (std::size_t target = 0; target < molecules.size(); ++target) {
    lp::LinearProgram program;
    std::vector<std::size_t> var(molecules.size(), 0);
    std::vector<lp::Term> mass;
    for (std::size_t j = 0; j < molecules.size(); ++j) {
      if (j == target) continue;
      var[j] = program.add_variable();
      mass.push_back({var[j], Rational(1)});
    }
    program.add_constraint(mass, lp::Sense::Equal, Rational(1));
    for (PointIndex p : points) {
      std::vector<lp::Term> row;
      for (std::size_t j = 0; j < molecules.size(); ++j)
        if (j != target && elements[j].coeff(p) != 0) row.push_back({var[j], elements[j].coeff(p)});
      program.add_constraint(row, lp::Sense::Equal, elements[target].coeff(p));
    }
    if (lp::maximize(program).status == lp::Status::Infeasible) vertices.push_back(molecules[target]);
  }
  return vertices;
}

}  // namespace lipfree
