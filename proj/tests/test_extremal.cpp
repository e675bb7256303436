#include "doctest.h"

#include "lipfree/error.hpp"
#include "lipfree/extremal.hpp"
#include "lipfree/generators.hpp"
#include "lipfree/norm.hpp"
#include "oracles.hpp"

#include <algorithm>

using namespace lipfree;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("classify_molecule examples") {
  auto tri = gen::named_space("TRI");
  auto v = classify_molecule(tri, 1, 2);
  CHECK(v.verdict == Verdict::Exposed);
  CHECK(v.segment_trivial);
  REQUIRE(v.exposing_function);
  CHECK(*v.exposing_function == f_pq(tri, 1, 2));
  CHECK(v.face.is_unique_normer);
  CHECK_FALSE(v.counterexample_decomposition);

  auto line = gen::named_space("LINE3");
  auto w = classify_molecule(line, 0, 2);
  CHECK(w.verdict == Verdict::NotExtreme);
  REQUIRE(w.counterexample_decomposition);
  const auto& dec = *w.counterexample_decomposition;
  CHECK(dec.interior == 1);
  CHECK(dec.u != dec.v);
  CHECK((dec.u + dec.v) / q(2) == Molecule{0, 2}.element(line));
  CHECK(q(1, 2) * Molecule{0, 1}.element(line) + q(1, 2) * Molecule{1, 2}.element(line) ==
        Molecule{0, 2}.element(line));
  CHECK(dec.u_norm.value == 1);
  CHECK(dec.v_norm.value == 1);
  CHECK(check_certificate(dec.u, dec.u_norm));
  CHECK(check_certificate(dec.v, dec.v_norm));

  CHECK(classify_molecule(gen::named_space("TWO"), 1, 0).verdict == Verdict::Exposed);
  CHECK(code_of([&] { classify_molecule(line, 1, 1); }) == ErrorCode::DegeneratePair);
}

TEST_CASE("classification matches segments and the brute-force vertex set") {
  for (const auto& entry : gen::default_corpus(5, 6)) {
    const auto& space = entry.space;
    auto vertices = unit_ball_vertices(space);
    for (const auto& m : all_molecules(*space)) {
      auto v = classify_molecule(space, m.p, m.q);
      const bool trivial = segment(*space, m.p, m.q).trivial();
      CHECK(v.segment_trivial == trivial);
      CHECK((v.verdict == Verdict::Exposed) == trivial);
      CHECK(v.face.is_unique_normer == trivial);
      CHECK((std::find(vertices.begin(), vertices.end(), m) != vertices.end()) == trivial);
      CHECK(normers_support_check(space, m.p, m.q));
      if (!trivial) {
        REQUIRE(v.counterexample_decomposition);
        const auto& dec = *v.counterexample_decomposition;
        CHECK(dec.u != dec.v);
        CHECK((dec.u + dec.v) / q(2) == m.element(space));
        CHECK(free_norm_dual(dec.u).value == 1);
        CHECK(free_norm_primal(dec.v).value == 1);
      }
    }
  }
}

TEST_CASE("normers_support_check examples") {
  CHECK(normers_support_check(gen::named_space("TRI"), 1, 2));
  auto line = gen::named_space("LINE3");
  CHECK(normers_support_check(line, 0, 2));
  CHECK(norming_face(f_pq(line, 0, 2)).tight_molecules.size() == 3);
  auto line4 = gen::named_space("LINE4");
  CHECK(normers_support_check(line4, 0, 3));
  CHECK(segment(*line4, 0, 3).members == PointSet{0, 1, 2, 3});
}

TEST_CASE("positive ball extreme points") {
  auto line = gen::named_space("LINE3");
  auto ext = positive_ball_extremes(line);
  REQUIRE(ext.size() == 3);
  CHECK(ext[0].is_zero());
  CHECK(ext[1] == FreeElement::delta(line, 1));
  CHECK(ext[2] == FreeElement::delta(line, 2) / q(2));

  auto one = positive_ball_extremes(gen::named_space("ONE"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].is_zero());

  auto tri = gen::named_space("TRI");
  auto t = positive_ball_extremes(tri);
  REQUIRE(t.size() == 3);
  CHECK(t[1] == FreeElement::delta(tri, 1));
  CHECK(t[2] == FreeElement::delta(tri, 2));

  for (const auto& entry : gen::default_corpus(9, 6)) {
    const auto& space = entry.space;
    const auto points = space->non_base_points();
    linalg::Matrix a;
    linalg::Vector b;
    for (std::size_t k = 0; k < points.size(); ++k) {
      linalg::Vector row(points.size(), Rational(0));
      row[k] = -1;
      a.push_back(row);
      b.push_back(0);
    }
    linalg::Vector budget;
    for (PointIndex p : points) budget.push_back(space->dist(p, space->base()));
    a.push_back(budget);
    b.push_back(1);
    auto vertices = oracle::enumerate_vertices(a, b);
    auto claimed = positive_ball_extremes(space);
    CHECK(vertices.size() == claimed.size());
    for (const auto& e : claimed)
      CHECK(std::find(vertices.begin(), vertices.end(), e.coordinates()) != vertices.end());
  }
}

TEST_CASE("split_positive") {
  auto line = gen::named_space("LINE3");
  auto mu = (FreeElement::delta(line, 1) + FreeElement::delta(line, 2)) / q(3);
  auto split = split_positive(mu);
  CHECK(split.t == q(1, 3));
  CHECK(split.first == FreeElement::delta(line, 1));
  CHECK(split.second == FreeElement::delta(line, 2) / q(2));

  CHECK(code_of([&] { split_positive(FreeElement::delta(line, 2) / q(2)); }) == ErrorCode::SingletonSupport);
  CHECK(code_of([&] { split_positive(FreeElement::delta(line, 1) + FreeElement::delta(line, 2)); }) ==
        ErrorCode::NotNormalized);
  CHECK(code_of([&] { split_positive(Molecule{1, 2}.element(line)); }) == ErrorCode::NotPositive);

  gen::Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    auto space = gen::random_space(rng, 3 + trial % 7);
    auto lambda = gen::random_positive(rng, space, 3);
    lambda = lambda / positive_norm(lambda);
    auto s = split_positive(lambda);
    CHECK(s.t > 0);
    CHECK(s.t < 1);
    CHECK(s.first != s.second);
    CHECK(is_positive(s.first));
    CHECK(is_positive(s.second));
    CHECK(free_norm_dual(s.first).value == 1);
    CHECK(free_norm_dual(s.second).value == 1);
    CHECK(s.t * s.first + (1 - s.t) * s.second == lambda);
  }
}

TEST_CASE("N and its maximization") {
  auto line = gen::named_space("LINE3");
  auto lambda = FreeElement::delta(line, 1);
  auto mu = FreeElement::delta(line, 2) - FreeElement::delta(line, 1);
  auto best = maximize_N(lambda, mu);
  CHECK(best.value == 2);
  CHECK(perturbation_domain(mu) == PointSet{0, 1, 2});

  auto zero_mu = FreeElement(line);
  auto trivial = maximize_N(lambda, zero_mu);
  CHECK(trivial.value == 1);
  CHECK(trivial.f_star.domain() == PointSet{0});

  PartialFunction rho_on_s(line, {{0, q(0)}});
  CHECK(N_value(lambda + FreeElement::delta(line, 2), zero_mu, rho_on_s) == 3);
  PartialFunction wrong(line, {{0, q(0)}, {1, q(1)}});
  CHECK(code_of([&] { N_value(lambda, zero_mu, wrong); }) == ErrorCode::DomainMismatch);
  CHECK(code_of([&] { maximize_N(mu, zero_mu); }) == ErrorCode::NotPositive);

  // f = 0 on S gives f_I = d(., S)
  PartialFunction flat(line, {{0, q(0)}, {2, q(0)}});
  auto m2 = FreeElement::delta(line, 2) * q(5);
  CHECK(N_value(q(3) * FreeElement::delta(line, 1), m2, flat) == 3);

  gen::Rng rng(79);
  for (int trial = 0; trial < 150; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 7);
    auto l = gen::random_positive(rng, space);
    auto m = gen::random_element(rng, space);
    auto s = perturbation_domain(m);
    auto f = gen::random_partial(rng, space, s);
    auto g = gen::random_partial(rng, space, s);
    const Rational c = gen::random_rational(rng, 0, 1, 5);
    std::map<PointIndex, Rational> mix;
    for (PointIndex x : s) mix[x] = c * f(x) + (1 - c) * g(x);
    PartialFunction h(space, mix);
    CHECK(N_value(l, m, h) >= c * N_value(l, m, f) + (1 - c) * N_value(l, m, g));
    auto top = maximize_N(l, m);
    CHECK(top.value == free_norm_dual(l + m).value);
    CHECK(N_value(l, m, top.f_star) == top.value);
    CHECK(N_value(l, m, f) <= top.value);
  }
}

TEST_CASE("A_K partition") {
  auto line = gen::named_space("LINE3");
  auto cells = ak_partition(PartialFunction(line, {{0, q(0)}}));
  REQUIRE(cells.size() == 1);
  CHECK(cells.begin()->first == PointSet{0});
  CHECK(cells.begin()->second == PointSet{0, 1, 2});

  auto two = ak_partition(PartialFunction(line, {{0, q(0)}, {2, q(2)}}));
  CHECK(two.at(PointSet{0}).contains(1));

  gen::Rng rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 8);
    auto s = gen::random_subset(rng, *space);
    s.insert(space->base());
    auto f = gen::random_partial(rng, space, s);
    auto part = ak_partition(f);
    std::size_t covered = 0;
    PointSet seen;
    for (const auto& [k, cell] : part) {
      CHECK_FALSE(k.empty());
      CHECK_FALSE(cell.empty());
      covered += cell.size();
      seen.insert(cell.begin(), cell.end());
      for (PointIndex x : cell)
        if (s.contains(x)) CHECK(k.contains(x));
    }
    CHECK(covered == space->size());
    CHECK(seen == space->all_points());
  }
}

TEST_CASE("almost-positive witness on LINE4") {
  auto line4 = gen::named_space("LINE4");
  auto lambda = (FreeElement::delta(line4, 1) + FreeElement::delta(line4, 2) + FreeElement::delta(line4, 3)) / q(6);
  auto w = almost_positive_witness(lambda, FreeElement(line4));
  REQUIRE(w);
  CHECK(w->k == PointSet{0});
  CHECK(w->chosen_points == std::array<PointIndex, 3>{1, 2, 3});
  CHECK(w->extension == rho(line4));
  // c solves c1 + c2 + c3 = 0 and c1 + 2 c2 + 3 c3 = 0
  CHECK(w->c[1] == -2 * w->c[0]);
  CHECK(w->c[2] == w->c[0]);
  CHECK(w->c[0] != 0);
  CHECK(w->norm == 1);
  CHECK(free_norm(lambda + w->v).value == 1);
  CHECK(free_norm(lambda - w->v).value == 1);
  CHECK(check_witness(*w));

  CHECK_FALSE(almost_positive_witness(FreeElement::delta(line4, 2) / q(2), FreeElement(line4)));
  CHECK(code_of([&] { almost_positive_witness(-lambda, FreeElement(line4)); }) == ErrorCode::NotPositive);
}

TEST_CASE("witnesses on random instances verify") {
  gen::Rng rng(89);
  int produced = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto space = gen::random_space(rng, 4 + trial % 5);
    auto lambda = gen::random_positive(rng, space, 3);
    auto mu = trial % 3 == 0 ? FreeElement(space) : gen::random_element(rng, space);
    auto w = almost_positive_witness(lambda, mu);
    if (mu.is_zero() && support(lambda).size() >= 3) CHECK(w.has_value());
    if (!w) continue;
    ++produced;
    CHECK_FALSE(w->v.is_zero());
    CHECK(is_positive(lambda + w->v));
    CHECK(is_positive(lambda - w->v));
    CHECK(check_witness(*w));
  }
  CHECK(produced > 20);
}

TEST_CASE("extreme points of the unit ball without witnesses are molecules") {
  gen::Rng rng(97);
  for (const auto& entry : gen::default_corpus(13, 5)) {
    const auto& space = entry.space;
    for (const auto& m : unit_ball_vertices(space)) {
      auto e = m.element(space);
      // every split e = lambda + mu with lambda >= 0
      for (int s = 0; s < 3; ++s) {
        auto lambda = gen::random_positive(rng, space);
        auto w = almost_positive_witness(lambda, e - lambda);
        CHECK_FALSE(w.has_value());
      }
      FreeElement::Coefficients pos;
      for (const auto& [p, a] : e.coeffs())
        if (a > 0) pos[p] = a;
      CHECK_FALSE(almost_positive_witness(FreeElement(space, pos), e - FreeElement(space, pos)).has_value());
    }
  }
}
