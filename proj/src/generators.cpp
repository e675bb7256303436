#include "lipfree/generators.hpp"

#include "lipfree/error.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace lipfree::gen {

namespace {

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

std::vector<std::vector<Rational>> shortest_paths(std::size_t n,
                                                  const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& edges) {
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = Rational(0);
  for (const auto& [a, b, w] : edges) {
    if (!d[a][b] || w < *d[a][b]) d[a][b] = d[b][a] = w;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = Rational(*d[i][k] + *d[k][j]);
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!d[i][j]) throw Error(ErrorCode::InvalidArgument, "graph is disconnected");
      out[i][j] = *d[i][j];
    }
  return out;
}

}  // namespace

SpacePtr line_space(const std::vector<Rational>& positions) {
  const std::size_t n = positions.size();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = abs_value(positions[i] - positions[j]);
  return validate_space(index_labels(n), 0, std::move(d));
}

SpacePtr graph_space(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& edges) {
  return validate_space(index_labels(n), 0, shortest_paths(n, edges));
}

const std::vector<std::string>& named_space_names() {
  static const std::vector<std::string> names{"ONE", "TWO", "LINE3", "LINE4", "TRI", "SQUARE", "STAR", "UNIFORM4"};
  return names;
}

SpacePtr named_space(std::string_view name) {
  auto r = [](long v) { return Rational(v); };
  if (name == "ONE") return line_space({r(0)});
  if (name == "TWO") return line_space({r(0), r(1)});
  if (name == "LINE3") return line_space({r(0), r(1), r(2)});
  if (name == "LINE4") return line_space({r(0), r(1), r(2), r(3)});
  if (name == "TRI")
    return validate_space({"0", "a", "b"}, 0,
                          {{r(0), r(1), r(1)}, {r(1), r(0), make_rational(3, 2)}, {r(1), make_rational(3, 2), r(0)}});
  if (name == "SQUARE") return graph_space(4, {{0, 1, r(1)}, {1, 2, r(1)}, {2, 3, r(1)}, {3, 0, r(1)}});
  if (name == "STAR") return graph_space(4, {{0, 1, r(1)}, {0, 2, r(1)}, {0, 3, r(1)}});
  if (name == "UNIFORM4")
    return validate_space(index_labels(4), 0,
                          {{r(0), r(1), r(1), r(1)}, {r(1), r(0), r(1), r(1)}, {r(1), r(1), r(0), r(1)}, {r(1), r(1), r(1), r(0)}});
  throw Error(ErrorCode::InvalidArgument, "unknown named space '" + std::string(name) + "'");
}

Rational random_rational(Rng& rng, long lo, long hi, long max_denominator) {
  const long den = uniform(rng, 1, max_denominator);
  return make_rational(uniform(rng, lo * den, hi * den), den);
}

SpacePtr random_space(Rng& rng, std::size_t n, Family family) {
  switch (family) {
    case Family::Line: {
      std::vector<Rational> pos;
      while (pos.size() < n) {
        Rational x = random_rational(rng, -6, 6, 2);
        if (std::find(pos.begin(), pos.end(), x) == pos.end()) pos.push_back(std::move(x));
      }
      return line_space(pos);
    }
    case Family::Grid: {
      std::vector<std::pair<long, long>> pts;
      while (pts.size() < n) {
        std::pair<long, long> pt{uniform(rng, 0, 3), uniform(rng, 0, 3)};
        if (std::find(pts.begin(), pts.end(), pt) == pts.end()) pts.push_back(pt);
      }
      std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          d[i][j] = std::abs(pts[i].first - pts[j].first) + std::abs(pts[i].second - pts[j].second);
      return validate_space(index_labels(n), 0, std::move(d));
    }
    case Family::NearUniform: {
      // Any symmetric matrix with off-diagonal entries in [1,2] is a metric.
      std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = make_rational(uniform(rng, 4, 8), 4);
      return validate_space(index_labels(n), 0, std::move(d));
    }
    case Family::Tree: {
      std::vector<std::tuple<std::size_t, std::size_t, Rational>> edges;
      for (std::size_t i = 1; i < n; ++i)
        edges.emplace_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(i) - 1)), i, Rational(uniform(rng, 1, 3)));
      return graph_space(n, edges);
    }
    case Family::Graph: {
      std::vector<std::tuple<std::size_t, std::size_t, Rational>> edges;
      for (std::size_t i = 1; i < n; ++i)
        edges.emplace_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(i) - 1)), i, Rational(uniform(rng, 1, 4)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (uniform(rng, 0, 2) == 0) edges.emplace_back(i, j, Rational(uniform(rng, 1, 4)));
      return graph_space(n, edges);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown space family");
}

SpacePtr random_space(Rng& rng, std::size_t n) {
  return random_space(rng, n, static_cast<Family>(uniform(rng, 0, 4)));
}

std::vector<CorpusEntry> default_corpus(std::uint64_t seed, std::size_t max_points) {
  std::vector<CorpusEntry> corpus;
  for (const auto& name : named_space_names()) {
    auto space = named_space(name);
    if (space->size() <= max_points) corpus.push_back({name, std::move(space)});
  }
  Rng rng(seed);
  const Family families[] = {Family::Graph, Family::Line, Family::NearUniform, Family::Grid, Family::Tree};
  std::size_t i = 0;
  for (std::size_t n = 2; n <= max_points; ++n)
    for (int copy = 0; copy < 3; ++copy, ++i) {
      const Family family = families[i % 5];
      corpus.push_back({"random-" + std::to_string(n) + "-" + std::to_string(copy), random_space(rng, n, family)});
    }
  return corpus;
}

FreeElement random_element(Rng& rng, const SpacePtr& space) {
  FreeElement::Coefficients raw;
  for (PointIndex p : space->non_base_points())
    if (uniform(rng, 0, 1) == 1) raw[p] = random_rational(rng, -3, 3, 4);
  return FreeElement(space, raw);
}

FreeElement random_positive(Rng& rng, const SpacePtr& space, std::size_t min_support) {
  auto points = space->non_base_points();
  std::shuffle(points.begin(), points.end(), rng);
  const std::size_t lo = std::min(min_support, points.size());
  const auto count = static_cast<std::size_t>(uniform(rng, static_cast<long>(lo), static_cast<long>(points.size())));
  FreeElement::Coefficients raw;
  for (std::size_t i = 0; i < count; ++i) raw[points[i]] = make_rational(uniform(rng, 1, 12), uniform(rng, 1, 4));
  return FreeElement(space, raw);
}

WeightFunction random_weight(Rng& rng, const SpacePtr& space, bool nonnegative) {
  std::vector<Rational> values;
  for (PointIndex x = 0; x < space->size(); ++x)
    values.push_back(uniform(rng, 0, 2) == 0 ? Rational(0) : random_rational(rng, nonnegative ? 0 : -2, 2, 3));
  return WeightFunction(space, std::move(values));
}

LipFunction random_function(Rng& rng, const SpacePtr& space) {
  std::vector<Rational> values;
  for (PointIndex x = 0; x < space->size(); ++x)
    values.push_back(x == space->base() ? Rational(0) : random_rational(rng, -4, 4, 3));
  return LipFunction(space, std::move(values));
}

PartialFunction random_partial(Rng& rng, const SpacePtr& space, const PointSet& domain) {
  std::map<PointIndex, Rational> raw;
  for (PointIndex x : domain) raw[x] = x == space->base() ? Rational(0) : random_rational(rng, -4, 4, 3);
  PartialFunction f(space, raw);
  const Rational lip = lip_constant(f);
  if (lip > 1)
    for (auto& [x, v] : raw) v /= lip;
  return PartialFunction(space, std::move(raw));
}

LipFunction random_extension(Rng& rng, const PartialFunction& f) {
  const auto& space = f.space();
  std::map<PointIndex, Rational> known = f.values();
  std::vector<PointIndex> order;
  for (PointIndex x = 0; x < space.size(); ++x)
    if (!known.contains(x)) order.push_back(x);
  std::shuffle(order.begin(), order.end(), rng);
  for (PointIndex x : order) {
    // Any value in [max_q f(q) - d(q,x), min_q f(q) + d(q,x)] keeps the extension 1-Lipschitz.
    auto it = known.begin();
    Rational lo = it->second - space.dist(it->first, x), hi = it->second + space.dist(it->first, x);
    for (; it != known.end(); ++it) {
      lo = std::max(lo, Rational(it->second - space.dist(it->first, x)));
      hi = std::min(hi, Rational(it->second + space.dist(it->first, x)));
    }
    const long steps = 6;
    const Rational t = make_rational(uniform(rng, 0, steps), steps);
    known[x] = lo + t * (hi - lo);
  }
  std::vector<Rational> values;
  for (auto& [x, v] : known) values.push_back(v);
  return LipFunction(f.space_ptr(), std::move(values));
}

PointSet random_subset(Rng& rng, const PointedMetricSpace& space) {
  PointSet s;
  for (PointIndex x = 0; x < space.size(); ++x)
    if (uniform(rng, 0, 1) == 1) s.insert(x);
  return s;
}

}  // namespace lipfree::gen
