#pragma once

#include "lipfree/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lipfree {

using PointIndex = std::size_t;
using PointSet = std::set<PointIndex>;

/// Finite metric space with a distinguished base point. Instances are only
/// produced by validate_space(), so every live object satisfies the metric axioms.
class PointedMetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  PointIndex base() const noexcept { return base_; }
  const std::string& label(PointIndex i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Rational& dist(PointIndex i, PointIndex j) const { return dist_[i * size() + j]; }

  /// Index of `label`; throws UnknownLabel.
  PointIndex index_of(const std::string& label) const;
  std::optional<PointIndex> find(const std::string& label) const;

  /// All indices, and all indices except the base point.
  PointSet all_points() const;
  std::vector<PointIndex> non_base_points() const;

 private:
  friend std::shared_ptr<const PointedMetricSpace> validate_space(std::vector<std::string>,
                                                                  std::size_t,
                                                                  std::vector<std::vector<Rational>>);
  PointedMetricSpace() = default;

  std::vector<std::string> labels_;
  PointIndex base_ = 0;
  std::vector<Rational> dist_;
};

using SpacePtr = std::shared_ptr<const PointedMetricSpace>;

/// Checks the axioms in the order: shape, base, labels, nonnegativity, symmetry,
/// separation, triangle inequality (i, j, k lexicographic). The thrown Error's
/// indices name the first violating pair or triple; a triangle violation (i,j,k)
/// means dist(i,k) > dist(i,j) + dist(j,k).
SpacePtr validate_space(std::vector<std::string> labels, std::size_t base,
                        std::vector<std::vector<Rational>> dist);

/// Labels "0", "1", ... with base 0.
SpacePtr validate_space(std::vector<std::vector<Rational>> dist);

Rational distance_to_set(const PointedMetricSpace& space, PointIndex p, const PointSet& set);

/// sup of d(x,0) over the set; 0 for the empty set.
Rational radius(const PointedMetricSpace& space, const PointSet& set);

/// Closed ball {x : d(center,x) <= r}.
PointSet closed_ball(const PointedMetricSpace& space, PointIndex center, const Rational& r);

struct Segment {
  PointIndex p;
  PointIndex q;
  Rational epsilon;
  PointSet members;

  bool trivial() const { return members.size() == 2; }
};

/// [p,q]_eps = {x : d(p,x)+d(x,q) <= d(p,q)/(1-eps)}; eps = 0 is the metric segment.
/// Requires 0 <= eps < 1.
Segment segment(const PointedMetricSpace& space, PointIndex p, PointIndex q,
                const Rational& epsilon = Rational(0));

}  // namespace lipfree
