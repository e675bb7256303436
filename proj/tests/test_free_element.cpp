#include "doctest.h"

#include "lipfree/error.hpp"
#include "lipfree/generators.hpp"
#include "lipfree/norm.hpp"

using namespace lipfree;

namespace {
Rational q(long n, long d = 1) { return make_rational(n, d); }
}  // namespace

TEST_CASE("canonicalize drops zeros and the base point") {
  auto tri = gen::named_space("TRI");
  auto mu = canonicalize(tri, {{"a", q(3)}, {"b", q(0)}});
  CHECK(mu.coeffs().size() == 1);
  CHECK(mu.coeff(tri->index_of("a")) == 3);

  CHECK(canonicalize(tri, {{"0", q(5)}}).is_zero());

  auto half = canonicalize(tri, {{"a", q(1, 2)}, {"b", q(-1, 2)}});
  CHECK(half.coeffs().size() == 2);

  CHECK_THROWS_AS(canonicalize(tri, {{"z", q(1)}}), Error);
}

TEST_CASE("arithmetic keeps the representation canonical") {
  auto tri = gen::named_space("TRI");
  auto a = FreeElement::delta(tri, 1);
  auto b = FreeElement::delta(tri, 2);
  CHECK((a - a).is_zero());
  CHECK((a + b - b) == a);
  CHECK((q(2) * a).coeff(1) == 2);
  CHECK((a / q(4)).coeff(1) == q(1, 4));
  CHECK((q(0) * a).is_zero());
  auto other = gen::named_space("TRI");
  CHECK_THROWS_AS(a + FreeElement::delta(other, 1), Error);
}

TEST_CASE("support by coefficients and by bump functionals") {
  auto tri = gen::named_space("TRI");
  const PointIndex a = 1, b = 2;
  CHECK(support(FreeElement(tri)).empty());
  CHECK(support(q(3) * FreeElement::delta(tri, a)) == PointSet{a});
  CHECK(support(Molecule{a, b}.element(tri)) == PointSet{a, b});
  CHECK(support_by_functionals(Molecule{a, b}.element(tri)) == PointSet{a, b});
  CHECK(support_by_functionals(FreeElement::delta(tri, a) - FreeElement::delta(tri, b)) == PointSet{a, b});
  CHECK(support_by_functionals(FreeElement(tri)).empty());
  CHECK(support_by_functionals(FreeElement::delta(tri, a) + FreeElement::delta(tri, b)) == PointSet{a, b});

  // Bumps are nonnegative and 1-Lipschitz.
  for (PointIndex p : tri->non_base_points()) {
    auto bump = point_bump(*tri, p);
    CHECK(lip_constant(*tri, bump) <= 1);
    for (const auto& v : bump) CHECK(v >= 0);
  }

  gen::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto space = gen::random_space(rng, 1 + trial % 9);
    auto mu = gen::random_element(rng, space);
    auto nu = gen::random_element(rng, space);
    CHECK(support(mu) == support_by_functionals(mu));
    PointSet both = support(mu);
    both.merge(support(nu));
    const auto sum_support = support(mu + nu);
    CHECK(std::includes(both.begin(), both.end(), sum_support.begin(), sum_support.end()));
    CHECK_FALSE(sum_support.contains(space->base()));
  }
}

TEST_CASE("positivity and order") {
  auto tri = gen::named_space("TRI");
  auto a = FreeElement::delta(tri, 1);
  auto b = FreeElement::delta(tri, 2);
  CHECK(is_positive(a + q(2) * b));
  CHECK_FALSE(is_positive(a - b));
  // witnessed by the nonnegative bump at b
  CHECK(pairing(a - b, point_bump(*tri, 2)) < 0);
  CHECK(is_positive(FreeElement(tri)));

  CHECK(order_leq(a, q(2) * a));
  CHECK_FALSE(order_leq(a, b));
  CHECK(pairing(b - a, point_bump(*tri, 1)) < 0);
  CHECK(order_leq(a, a));
  CHECK_THROWS_AS(order_leq(a, FreeElement::delta(gen::named_space("TRI"), 1)), Error);
}

TEST_CASE("positivity matches the nonnegative-function LP") {
  gen::Rng rng(17);
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 7);
    auto mu = trial % 2 ? gen::random_positive(rng, space) : gen::random_element(rng, space);
    const bool lp_positive = min_pairing_nonnegative(mu) == 0;
    CHECK(is_positive(mu) == lp_positive);
    positives += lp_positive;
  }
  CHECK(positives > 50);
}

TEST_CASE("positive elements below each other have nested supports") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 7);
    auto lambda = gen::random_positive(rng, space);
    // mu = lambda weighted by values in [0,1] is positive and below lambda
    FreeElement::Coefficients raw;
    for (const auto& [p, a] : lambda.coeffs()) raw[p] = a * gen::random_rational(rng, 0, 1, 3);
    FreeElement mu(space, raw);
    REQUIRE(order_leq(mu, lambda));
    const auto s_mu = support(mu), s_lambda = support(lambda);
    CHECK(std::includes(s_lambda.begin(), s_lambda.end(), s_mu.begin(), s_mu.end()));
  }
}

TEST_CASE("subspace membership agrees with the functional characterization") {
  auto tri = gen::named_space("TRI");
  CHECK(subspace_membership(FreeElement::delta(tri, 1), {1, 2}));
  CHECK_FALSE(subspace_membership(Molecule{1, 2}.element(tri), {1}));
  CHECK(subspace_membership(FreeElement(tri), {}));
  // functions agreeing on {a, 0} but differing at b separate m_ab
  auto m = Molecule{1, 2}.element(tri);
  CHECK(pairing(m, std::vector<Rational>{0, 0, 0}) != pairing(m, std::vector<Rational>{0, 0, q(1, 2)}));

  gen::Rng rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 7);
    auto mu = gen::random_element(rng, space);
    auto k = gen::random_subset(rng, *space);
    // (iii): <mu,f> = <mu,g> for sampled f, g agreeing on K ∪ {0}
    bool agree = true;
    for (int s = 0; s < 12 && agree; ++s) {
      auto f = gen::random_function(rng, space);
      auto values = f.values();
      for (PointIndex x = 0; x < space->size(); ++x)
        if (!k.contains(x) && x != space->base()) values[x] += gen::random_rational(rng, -2, 2, 2);
      agree = pairing(mu, f) == pairing(mu, values);
    }
    // A random perturbation separates mu almost surely when it has mass outside K.
    CHECK(subspace_membership(mu, k) == agree);
  }
}

TEST_CASE("intersection property for coordinate subspaces") {
  auto line4 = gen::named_space("LINE4");
  CHECK(intersection_property_check(*line4, {{0, 1, 2}, {0, 2, 3}}));
  CHECK(intersection_property_check(*line4, {{1, 3}}));
  CHECK_THROWS_AS(intersection_property_check(*line4, {}), Error);

  gen::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto space = gen::random_space(rng, 8);
    std::vector<PointSet> family;
    for (int i = 0; i < 3; ++i) family.push_back(gen::random_subset(rng, *space));
    CHECK(intersection_property_check(*space, family));
  }
}
