#pragma once

#include "lipfree/rational.hpp"

#include <optional>
#include <vector>

namespace lipfree::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of {x : m x = 0}; `columns` is needed when m has no rows.
Matrix nullspace(Matrix m, std::size_t columns);

/// Unique solution of a square nonsingular system, nullopt when singular.
std::optional<Vector> solve_square(Matrix a, Vector b);

/// Basis (as a list of vectors) of span(a) ∩ span(b); both lists hold vectors of equal length.
Matrix intersect_spans(const Matrix& a, const Matrix& b, std::size_t dimension);

/// True when span(a) == span(b).
bool same_span(const Matrix& a, const Matrix& b, std::size_t dimension);

/// x is a vertex of {y : a y <= b}: feasible, and the active rows have full column rank.
bool is_vertex(const Matrix& a, const Vector& b, const Vector& x);

/// Every vertex of {x : a x <= b}, found by solving each square subsystem of rows.
/// Exponential in the dimension; meant for small polytopes.
std::vector<Vector> enumerate_vertices(const Matrix& a, const Vector& b);

}  // namespace lipfree::linalg
