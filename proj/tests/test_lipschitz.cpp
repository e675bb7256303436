#include "doctest.h"

#include "lipfree/error.hpp"
#include "lipfree/generators.hpp"
#include "lipfree/lipschitz.hpp"
#include "lipfree/norm.hpp"

#include <algorithm>

using namespace lipfree;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

std::vector<Rational> vals(std::initializer_list<Rational> v) { return v; }

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

TEST_CASE("function constructors validate their input") {
  auto line = gen::named_space("LINE3");
  CHECK(code_of([&] { LipFunction(line, vals({q(1), q(0), q(0)})); }) == ErrorCode::BaseValueNonzero);
  CHECK(code_of([&] { LipFunction(line, vals({q(0)})); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { PartialFunction(line, {{1, q(1)}}); }) == ErrorCode::DomainMismatch);
  CHECK(code_of([&] { PartialFunction(line, {{0, q(2)}}); }) == ErrorCode::BaseValueNonzero);
  WeightFunction h(line, vals({q(3), q(0), q(-5)}));
  CHECK(h.support() == PointSet{0, 2});
  CHECK(h.sup_norm() == 5);
}

TEST_CASE("lip_constant on small examples") {
  auto line = gen::named_space("LINE3");
  CHECK(lip_constant(LipFunction(line, vals({q(0), q(1), q(2)}))) == 1);
  CHECK(lip_constant(LipFunction(line, vals({q(0), q(3), q(3)}))) == 3);
  CHECK(lip_constant(LipFunction::zero(line)) == 0);
  CHECK(lip_constant(*gen::named_space("ONE"), vals({q(0)})) == 0);
  PartialFunction partial(line, {{0, q(0)}, {2, q(1)}});
  CHECK(lip_constant(partial) == q(1, 2));
}

TEST_CASE("rho and the truncation Lambda_r") {
  auto line = gen::named_space("LINE3");
  CHECK(rho(line).values() == vals({q(0), q(1), q(2)}));
  CHECK(truncate_lambda_r(line, q(1)).values() == vals({q(0), q(1), q(0)}));
  CHECK(truncate_lambda_r(line, q(2)).values() == vals({q(0), q(1), q(2)}));
  CHECK(code_of([&] { truncate_lambda_r(line, q(0)); }) == ErrorCode::NonpositiveRadius);

  gen::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 9);
    const Rational r = gen::random_rational(rng, 0, 3, 4) + q(1, 8);
    auto lambda = truncate_lambda_r(space, r);
    CHECK(lip_constant(lambda) <= 1);
    for (PointIndex x = 0; x < space->size(); ++x) {
      const Rational& d0 = space->dist(x, space->base());
      CHECK(lambda(x) >= 0);
      if (d0 <= r) CHECK(lambda(x) == d0);
      if (d0 >= 2 * r) CHECK(lambda(x) == 0);
    }
    auto f = gen::random_function(rng, space);
    auto fr = truncate_f_r(f, r);
    CHECK(lip_constant(fr) <= lip_constant(f));
    for (PointIndex x = 0; x < space->size(); ++x)
      if (space->dist(x, space->base()) <= r / 2 || lip_constant(f) == 0) {
        // |f| <= L d(x,0) = L Lambda_r near the base, so f is unchanged there
        CHECK(fr(x) == f(x));
      }
  }
}

TEST_CASE("f_pq peak functions") {
  auto tri = gen::named_space("TRI");
  const PointIndex a = tri->index_of("a"), b = tri->index_of("b");
  CHECK(f_pq(tri, a, b).values() == vals({q(0), q(3, 4), q(-3, 4)}));

  auto line = gen::named_space("LINE3");
  CHECK(f_pq(line, 2, 0).values() == vals({q(0), q(1), q(2)}));
  CHECK(code_of([&] { f_pq(line, 1, 1); }) == ErrorCode::DegeneratePair);
}

TEST_CASE("f_pq: normalization and near-peak points lie in an epsilon-segment") {
  gen::Rng rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 8);
    for (PointIndex p = 0; p < space->size(); ++p)
      for (PointIndex r = 0; r < space->size(); ++r) {
        if (p == r) continue;
        auto f = f_pq(space, p, r);
        CHECK(lip_constant(f) == 1);
        CHECK(pairing(Molecule{p, r}.element(space), f) == 1);
        for (const Rational& eps : {q(0), q(1, 10), q(1, 5), q(1, 4)}) {
          const auto seg = segment(*space, p, r, eps).members;
          for (PointIndex u = 0; u < space->size(); ++u)
            for (PointIndex v = 0; v < space->size(); ++v) {
              if (u == v || pairing(Molecule{u, v}.element(space), f) < 1 - eps) continue;
              CHECK(seg.contains(u));
              CHECK(seg.contains(v));
            }
        }
      }
  }
}

TEST_CASE("McShane extension") {
  auto line = gen::named_space("LINE3");
  PartialFunction f(line, {{0, q(0)}, {2, q(1)}});
  CHECK(mcshane_extend(f).values() == vals({q(0), q(1), q(1)}));

  PartialFunction steep(line, {{0, q(0)}, {1, q(2)}});
  CHECK(code_of([&] { mcshane_extend(steep); }) == ErrorCode::NotOneLipschitzOnDomain);

  gen::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    auto space = gen::random_space(rng, 1 + trial % 9);
    auto domain = gen::random_subset(rng, *space);
    domain.insert(space->base());
    auto partial = gen::random_partial(rng, space, domain);
    auto ext = mcshane_extend(partial);
    CHECK(lip_constant(ext) <= 1);
    for (const auto& [x, v] : partial.values()) CHECK(ext(x) == v);
    // pointwise maximal among 1-Lipschitz extensions
    for (int s = 0; s < 4; ++s) {
      auto other = gen::random_extension(rng, partial);
      REQUIRE(lip_constant(other) <= 1);
      for (const auto& [x, v] : partial.values()) REQUIRE(other(x) == v);
      for (PointIndex x = 0; x < space->size(); ++x) CHECK(other(x) <= ext(x));
    }
  }
}

TEST_CASE("bump functions") {
  auto line = gen::named_space("LINE3");
  CHECK(bump_h(line, {0}, q(2)).values() == vals({q(1), q(1, 2), q(0)}));
  CHECK(code_of([&] { bump_h(line, {}, q(1)); }) == ErrorCode::EmptySet);
  CHECK(code_of([&] { bump_h(line, {0}, q(-1)); }) == ErrorCode::NonpositiveRadius);

  gen::Rng rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 9);
    auto s = gen::random_subset(rng, *space);
    if (s.empty()) s.insert(space->base());
    const Rational r = gen::random_rational(rng, 0, 2, 4) + q(1, 4);
    auto h = bump_h(space, s, r);
    CHECK(lip_constant(h) <= 1 / r);
    for (PointIndex x = 0; x < space->size(); ++x) {
      CHECK(h(x) >= 0);
      CHECK(h(x) <= 1);
      if (s.contains(x)) CHECK(h(x) == 1);
      if (distance_to_set(*space, x, s) >= r) CHECK(h(x) == 0);
    }
  }
}

TEST_CASE("multiplication operator T_h and weighting W_h") {
  auto line = gen::named_space("LINE3");
  WeightFunction h(line, vals({q(5), q(1), q(0)}));
  LipFunction f(line, vals({q(0), q(1), q(2)}));
  CHECK(apply_T_h(f, h).values() == vals({q(0), q(1), q(0)}));
  CHECK(code_of([&] { apply_T_h(f, h, {0}); }) == ErrorCode::SupportNotContained);
  CHECK(code_of([&] { apply_T_h(f, h, {1}); }) == ErrorCode::SupportNotContained);
  CHECK(code_of([&] { apply_T_h(f, WeightFunction(gen::named_space("LINE3"), h.values())); }) ==
        ErrorCode::SpaceMismatch);

  gen::Rng rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    auto space = gen::random_space(rng, 1 + trial % 9);
    auto weight = gen::random_weight(rng, space);
    auto g = gen::random_function(rng, space);
    auto k = weight.support();
    k.insert(space->base());
    for (PointIndex x : gen::random_subset(rng, *space)) k.insert(x);
    auto tg = apply_T_h(g, weight, k);
    CHECK(lip_constant(tg) <= multiplier_bound(weight) * lip_constant(g));
    for (PointIndex x = 0; x < space->size(); ++x) {
      if (k.contains(x)) CHECK(tg(x) == g(x) * weight(x));
      else CHECK(tg(x) == 0);
    }
    auto mu = gen::random_element(rng, space);
    auto wmu = weight_element(mu, weight);
    CHECK(pairing(wmu, g) == pairing(mu, tg));
    auto s_w = support(wmu), s_mu = support(mu), s_h = weight.support();
    for (PointIndex x : s_w) {
      CHECK(s_mu.contains(x));
      CHECK(s_h.contains(x));
    }
    // ||W_h mu|| <= bound * ||mu||
    if (space->size() <= 6) CHECK(free_norm_dual(wmu).value <= multiplier_bound(weight) * free_norm_dual(mu).value);
  }
}
