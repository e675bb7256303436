#include "doctest.h"

#include "lipfree/error.hpp"
#include "lipfree/generators.hpp"
#include "lipfree/metric_space.hpp"

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

TEST_CASE("validate_space accepts LINE3 and the one-point space") {
  auto line = validate_space({{q(0), q(1), q(2)}, {q(1), q(0), q(1)}, {q(2), q(1), q(0)}});
  CHECK(line->size() == 3);
  CHECK(line->base() == 0);
  CHECK(line->dist(0, 2) == 2);

  auto one = validate_space({{q(0)}});
  CHECK(one->size() == 1);
  CHECK(one->non_base_points().empty());
}

TEST_CASE("validate_space reports the first violated axiom") {
  // labels 0, a, b with d(a,b) = 5 > d(a,0) + d(0,b)
  try {
    validate_space({"0", "a", "b"}, 0, {{q(0), q(1), q(1)}, {q(1), q(0), q(5)}, {q(1), q(5), q(0)}});
    FAIL("triangle violation not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TriangleViolation);
    CHECK(e.indices() == std::vector<std::size_t>{1, 0, 2});
  }

  CHECK(code_of([] { validate_space({{q(0), q(1)}, {q(2), q(0)}}); }) == ErrorCode::AsymmetricDistance);
  CHECK(code_of([] { validate_space({{q(0), q(0)}, {q(0), q(0)}}); }) == ErrorCode::ZeroDistanceDistinctPoints);
  CHECK(code_of([] { validate_space({"0", "1"}, 2, {{q(0), q(1)}, {q(1), q(0)}}); }) == ErrorCode::BadBaseIndex);
  CHECK(code_of([] { validate_space({"x", "x"}, 0, {{q(0), q(1)}, {q(1), q(0)}}); }) == ErrorCode::DuplicateLabel);
  CHECK(code_of([] { validate_space({{q(0), q(1)}, {q(1)}}); }) == ErrorCode::NonSquareMatrix);
  CHECK(code_of([] { validate_space({{q(0), q(-1)}, {q(-1), q(0)}}); }) == ErrorCode::NegativeDistance);
}

TEST_CASE("distance_to_set and radius") {
  auto line = gen::named_space("LINE3");
  CHECK(distance_to_set(*line, 2, {0, 1}) == 1);
  CHECK(distance_to_set(*line, 0, {1, 2}) == 1);
  CHECK(distance_to_set(*line, 1, {1, 2}) == 0);
  CHECK(code_of([&] { distance_to_set(*line, 0, {}); }) == ErrorCode::EmptySet);

  CHECK(radius(*line, {1, 2}) == 2);
  CHECK(radius(*line, {}) == 0);
  CHECK(radius(*line, {0}) == 0);
  for (PointIndex x = 0; x < line->size(); ++x) CHECK(radius(*line, {x}) == distance_to_set(*line, x, {0}));
}

TEST_CASE("segments and epsilon-segments") {
  auto line = gen::named_space("LINE3");
  CHECK(segment(*line, 0, 2).members == PointSet{0, 1, 2});

  auto tri = gen::named_space("TRI");
  const PointIndex a = tri->index_of("a"), b = tri->index_of("b"), o = tri->base();
  CHECK(segment(*tri, a, b).members == PointSet{a, b});
  CHECK(segment(*tri, a, b).trivial());
  // 1 + 1 <= (3/2) / (3/4) = 2
  CHECK(segment(*tri, a, b, q(1, 4)).members == PointSet{o, a, b});
  CHECK(segment(*tri, a, b, q(1, 5)).members == PointSet{a, b});

  CHECK(code_of([&] { segment(*tri, a, a); }) == ErrorCode::DegeneratePair);
  CHECK(code_of([&] { segment(*tri, a, b, q(1)); }) == ErrorCode::EpsilonOutOfRange);
  CHECK(code_of([&] { segment(*tri, a, b, q(-1, 2)); }) == ErrorCode::EpsilonOutOfRange);
}

TEST_CASE("segment properties on random spaces") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto space = gen::random_space(rng, 2 + trial % 8);
    for (PointIndex p = 0; p < space->size(); ++p)
      for (PointIndex r = 0; r < space->size(); ++r) {
        if (p == r) continue;
        const auto exact = segment(*space, p, r).members;
        CHECK(exact.contains(p));
        CHECK(exact.contains(r));
        CHECK(exact == segment(*space, r, p).members);

        // Monotone in epsilon, and some epsilon > 0 already gives the exact segment.
        std::vector<Rational> grid{q(1, 2), q(1, 4), q(1, 8), q(1, 16), q(1, 64), q(1, 256), q(1, 1024)};
        PointSet previous = space->all_points();
        bool reached = false;
        for (const auto& eps : grid) {
          const auto members = segment(*space, p, r, eps).members;
          CHECK(std::includes(previous.begin(), previous.end(), members.begin(), members.end()));
          CHECK(std::includes(members.begin(), members.end(), exact.begin(), exact.end()));
          reached = reached || members == exact;
          previous = members;
        }
        CHECK(reached);
      }
  }
}
