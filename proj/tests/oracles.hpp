#pragma once

// Brute-force references that share no code path with the LP solver.

#include "lipfree/free_element.hpp"
#include "lipfree/linalg.hpp"

#include <algorithm>
#include <vector>

namespace oracle {

using lipfree::Rational;
using lipfree::linalg::Matrix;
using lipfree::linalg::Vector;

/// Vertices of {x : a x <= b} by solving every square subsystem of rows.
inline std::vector<Vector> enumerate_vertices(const Matrix& a, const Vector& b) {
  const std::size_t dim = a.empty() ? 0 : a.front().size();
  std::vector<Vector> found;
  if (dim == 0) return {Vector{}};
  std::vector<bool> pick(a.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(dim), true);
  do {
    Matrix sub;
    Vector rhs;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (pick[i]) {
        sub.push_back(a[i]);
        rhs.push_back(b[i]);
      }
    auto x = lipfree::linalg::solve_square(sub, rhs);
    if (!x) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < a.size() && feasible; ++i) {
      Rational lhs = 0;
      for (std::size_t k = 0; k < dim; ++k) lhs += a[i][k] * (*x)[k];
      feasible = lhs <= b[i];
    }
    if (feasible && std::find(found.begin(), found.end(), *x) == found.end()) found.push_back(*x);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return found;
}

/// Vertices of the unit ball of Lip_0(M) in coordinates f(p), p != base.
inline std::vector<Vector> lipschitz_ball_vertices(const lipfree::PointedMetricSpace& space) {
  const auto points = space.non_base_points();
  Matrix a;
  Vector b;
  auto coord = [&](lipfree::PointIndex x) -> std::ptrdiff_t {
    auto it = std::find(points.begin(), points.end(), x);
    return it == points.end() ? -1 : it - points.begin();
  };
  for (lipfree::PointIndex x = 0; x < space.size(); ++x)
    for (lipfree::PointIndex y = 0; y < space.size(); ++y) {
      if (x == y) continue;
      Vector row(points.size(), Rational(0));
      if (coord(x) >= 0) row[static_cast<std::size_t>(coord(x))] += 1;
      if (coord(y) >= 0) row[static_cast<std::size_t>(coord(y))] -= 1;
      a.push_back(row);
      b.push_back(space.dist(x, y));
    }
  return enumerate_vertices(a, b);
}

/// ||mu|| as the maximum of <mu,f> over the vertices of the Lipschitz ball.
inline Rational bruteforce_norm(const lipfree::FreeElement& mu) {
  const auto coords = mu.coordinates();
  Rational best = 0;
  for (const auto& f : lipschitz_ball_vertices(mu.space())) {
    Rational value = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) value += coords[k] * f[k];
    best = std::max(best, value);
  }
  return best;
}

}  // namespace oracle
