#include "lipfree/metric_space.hpp"

#include "lipfree/error.hpp"

#include <algorithm>

namespace lipfree {

PointIndex PointedMetricSpace::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorCode::UnknownLabel, "no point labelled '" + label + "'");
}

std::optional<PointIndex> PointedMetricSpace::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<PointIndex>(it - labels_.begin());
}

PointSet PointedMetricSpace::all_points() const {
  PointSet all;
  for (PointIndex i = 0; i < size(); ++i) all.insert(all.end(), i);
  return all;
}

std::vector<PointIndex> PointedMetricSpace::non_base_points() const {
  std::vector<PointIndex> out;
  for (PointIndex i = 0; i < size(); ++i)
    if (i != base_) out.push_back(i);
  return out;
}

SpacePtr validate_space(std::vector<std::string> labels, std::size_t base,
                        std::vector<std::vector<Rational>> dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorCode::NonSquareMatrix, "empty distance matrix");
  for (std::size_t i = 0; i < n; ++i)
    if (dist[i].size() != n)
      throw Error(ErrorCode::NonSquareMatrix,
                  "row " + std::to_string(i) + " has " + std::to_string(dist[i].size()) +
                      " entries, expected " + std::to_string(n),
                  {i});
  if (labels.size() != n)
    throw Error(ErrorCode::NonSquareMatrix, "label count does not match matrix size");
  if (base >= n) throw Error(ErrorCode::BadBaseIndex, "base index out of range", {base});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (labels[i] == labels[j])
        throw Error(ErrorCode::DuplicateLabel, "label '" + labels[i] + "' repeated", {i, j});

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dist[i][j] < 0)
        throw Error(ErrorCode::NegativeDistance, "negative distance", {i, j});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dist[i][j] != dist[j][i])
        throw Error(ErrorCode::AsymmetricDistance,
                    "d(" + labels[i] + "," + labels[j] + ") != d(" + labels[j] + "," + labels[i] + ")",
                    {i, j});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((dist[i][j] == 0) != (i == j))
        throw Error(ErrorCode::ZeroDistanceDistinctPoints,
                    "separation fails at (" + labels[i] + "," + labels[j] + ")", {i, j});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dist[i][k] > dist[i][j] + dist[j][k])
          throw Error(ErrorCode::TriangleViolation,
                      "d(" + labels[i] + "," + labels[k] + ") > d(" + labels[i] + "," + labels[j] +
                          ") + d(" + labels[j] + "," + labels[k] + ")",
                      {i, j, k});

  auto space = std::shared_ptr<PointedMetricSpace>(new PointedMetricSpace());
  space->labels_ = std::move(labels);
  space->base_ = base;
  space->dist_.reserve(n * n);
  for (auto& row : dist)
    for (auto& entry : row) space->dist_.push_back(std::move(entry));
  return space;
}

SpacePtr validate_space(std::vector<std::vector<Rational>> dist) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dist.size(); ++i) labels.push_back(std::to_string(i));
  return validate_space(std::move(labels), 0, std::move(dist));
}

Rational distance_to_set(const PointedMetricSpace& space, PointIndex p, const PointSet& set) {
  if (set.empty()) throw Error(ErrorCode::EmptySet, "distance to the empty set");
  Rational best = space.dist(p, *set.begin());
  for (PointIndex x : set) best = std::min(best, space.dist(p, x));
  return best;
}

Rational radius(const PointedMetricSpace& space, const PointSet& set) {
  Rational r = 0;
  for (PointIndex x : set) r = std::max(r, space.dist(x, space.base()));
  return r;
}

PointSet closed_ball(const PointedMetricSpace& space, PointIndex center, const Rational& r) {
  PointSet ball;
  for (PointIndex x = 0; x < space.size(); ++x)
    if (space.dist(center, x) <= r) ball.insert(ball.end(), x);
  return ball;
}

Segment segment(const PointedMetricSpace& space, PointIndex p, PointIndex q, const Rational& epsilon) {
  if (p == q) throw Error(ErrorCode::DegeneratePair, "segment endpoints coincide", {p});
  if (epsilon < 0 || epsilon >= 1)
    throw Error(ErrorCode::EpsilonOutOfRange, "epsilon must lie in [0,1)");
  const Rational bound = space.dist(p, q) / (1 - epsilon);
  Segment seg{p, q, epsilon, {}};
  for (PointIndex x = 0; x < space.size(); ++x)
    if (space.dist(p, x) + space.dist(x, q) <= bound) seg.members.insert(seg.members.end(), x);
  return seg;
}

}  // namespace lipfree
