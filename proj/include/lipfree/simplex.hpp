#pragma once

#include "lipfree/rational.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace lipfree::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class Bound { NonNegative, Free };
enum class Status { Optimal, Infeasible, Unbounded };

std::string_view status_name(Status status);

struct Term {
  std::size_t var;
  Rational coeff;
};

/// Dense-enough LP model: variables are nonnegative or free, constraints are
/// sparse rows with a sense and right-hand side.
class LinearProgram {
 public:
  struct Row {
    std::vector<Term> terms;
    Sense sense;
    Rational rhs;
  };

  std::size_t add_variable(Bound bound = Bound::NonNegative, Rational objective = Rational(0));
  void set_objective(std::size_t var, Rational coeff) { objective_.at(var) = std::move(coeff); }
  void add_constraint(std::vector<Term> terms, Sense sense, Rational rhs);

  std::size_t num_variables() const { return bounds_.size(); }
  const std::vector<Bound>& bounds() const { return bounds_; }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  std::vector<Bound> bounds_;
  std::vector<Rational> objective_;
  std::vector<Row> rows_;
};

struct Solution {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;  // one entry per model variable, valid when Optimal
  std::size_t pivots = 0;
};

/// Two-phase primal simplex in exact arithmetic on a condensed tableau
/// (rows = basic variables, columns = nonbasic variables). Pivoting follows
/// Bland's rule, so the method terminates on degenerate problems.
Solution maximize(const LinearProgram& program);
Solution minimize(const LinearProgram& program);

}  // namespace lipfree::lp
