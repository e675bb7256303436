#pragma once

#include "lipfree/lipschitz.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace lipfree::gen {

using Rng = std::mt19937_64;

/// Points of the real line at the given positions; labels "0", "1", ...; base "0".
SpacePtr line_space(const std::vector<Rational>& positions);

/// Shortest-path metric of a weighted connected graph given by an edge list.
SpacePtr graph_space(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& edges);

/// ONE, TWO, LINE3, LINE4, TRI, SQUARE (4-cycle), STAR (K_{1,3} with base at the centre),
/// UNIFORM4 (all distances 1). Throws InvalidArgument for other names.
SpacePtr named_space(std::string_view name);
const std::vector<std::string>& named_space_names();

enum class Family { Graph, Line, NearUniform, Grid, Tree };

Rational random_rational(Rng& rng, long lo, long hi, long max_denominator);

SpacePtr random_space(Rng& rng, std::size_t n, Family family);
SpacePtr random_space(Rng& rng, std::size_t n);

struct CorpusEntry {
  std::string name;
  SpacePtr space;
};

/// Named spaces plus a few random spaces of every size from 2 to max_points.
std::vector<CorpusEntry> default_corpus(std::uint64_t seed, std::size_t max_points);

/// Random element with each non-base coefficient nonzero with probability 1/2.
FreeElement random_element(Rng& rng, const SpacePtr& space);
/// Positive element; support has at least min(min_support, n-1) points.
FreeElement random_positive(Rng& rng, const SpacePtr& space, std::size_t min_support = 1);
WeightFunction random_weight(Rng& rng, const SpacePtr& space, bool nonnegative = false);
/// Random function in Lip_0 (not normalized).
LipFunction random_function(Rng& rng, const SpacePtr& space);
/// Random member of the unit ball of Lip_0(S) for the given domain (must contain base).
PartialFunction random_partial(Rng& rng, const SpacePtr& space, const PointSet& domain);
/// Random 1-Lipschitz extension of f to the whole space, built point by point.
LipFunction random_extension(Rng& rng, const PartialFunction& f);
/// Each point kept with probability 1/2.
PointSet random_subset(Rng& rng, const PointedMetricSpace& space);

}  // namespace lipfree::gen
