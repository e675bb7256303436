#include "lipfree/linalg.hpp"

#include <algorithm>
#include <utility>

namespace lipfree::linalg {

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pick = row;
    while (pick < m.size() && m[pick][col] == 0) ++pick;
    if (pick == m.size()) continue;
    std::swap(m[pick], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& entry : m[row]) entry *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

Matrix nullspace(Matrix m, std::size_t columns) {
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free_col = 0; free_col < columns; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vector v(columns, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve_square(Matrix a, Vector b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  const auto pivots = row_reduce(a);
  if (pivots.size() != n || (n > 0 && pivots.back() >= n)) return std::nullopt;
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

Matrix intersect_spans(const Matrix& a, const Matrix& b, std::size_t dimension) {
  if (a.empty() || b.empty()) return {};
  // Solve sum_i s_i a_i - sum_j t_j b_j = 0.
  Matrix system(dimension, Vector(a.size() + b.size(), Rational(0)));
  for (std::size_t k = 0; k < dimension; ++k) {
    for (std::size_t i = 0; i < a.size(); ++i) system[k][i] = a[i][k];
    for (std::size_t j = 0; j < b.size(); ++j) system[k][a.size() + j] = -b[j][k];
  }
  Matrix raw;
  for (const auto& coeffs : nullspace(system, a.size() + b.size())) {
    Vector v(dimension, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < dimension; ++k) v[k] += coeffs[i] * a[i][k];
    raw.push_back(std::move(v));
  }
  if (raw.empty()) return {};
  row_reduce(raw);
  Matrix basis;
  for (auto& row : raw) {
    bool zero = true;
    for (const auto& e : row) zero = zero && e == 0;
    if (!zero) basis.push_back(std::move(row));
  }
  return basis;
}

bool same_span(const Matrix& a, const Matrix& b, std::size_t dimension) {
  auto pad = [dimension](const Matrix& m) {
    return m.empty() ? Matrix{Vector(dimension, Rational(0))} : m;
  };
  Matrix both = pad(a);
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = rank(both);
  return r == rank(pad(a)) && r == rank(pad(b));
}

std::vector<Vector> enumerate_vertices(const Matrix& a, const Vector& b) {
  const std::size_t dim = a.empty() ? 0 : a.front().size();
  if (dim == 0) return {Vector{}};
  std::vector<Vector> found;
  if (a.size() < dim) return found;
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
    auto x = solve_square(std::move(sub), std::move(rhs));
    if (!x) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < a.size() && feasible; ++i) {
      Rational lhs = 0;
      for (std::size_t k = 0; k < dim; ++k) lhs += a[i][k] * (*x)[k];
      feasible = lhs <= b[i];
    }
    if (feasible && std::find(found.begin(), found.end(), *x) == found.end()) found.push_back(std::move(*x));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return found;
}

bool is_vertex(const Matrix& a, const Vector& b, const Vector& x) {
  Matrix active;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t k = 0; k < x.size(); ++k) lhs += a[i][k] * x[k];
    if (lhs > b[i]) return false;
    if (lhs == b[i]) active.push_back(a[i]);
  }
  if (x.empty()) return true;
  return !active.empty() && rank(active) == x.size();
}

}  // namespace lipfree::linalg
