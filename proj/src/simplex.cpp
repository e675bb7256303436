#include "lipfree/simplex.hpp"

#include "lipfree/error.hpp"

#include <algorithm>
#include <limits>

namespace lipfree::lp {

std::string_view status_name(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

std::size_t LinearProgram::add_variable(Bound bound, Rational objective) {
  bounds_.push_back(bound);
  objective_.push_back(std::move(objective));
  return bounds_.size() - 1;
}

void LinearProgram::add_constraint(std::vector<Term> terms, Sense sense, Rational rhs) {
  for (const auto& t : terms)
    if (t.var >= bounds_.size()) throw Error(ErrorCode::InvalidArgument, "constraint on unknown variable");
  rows_.push_back({std::move(terms), sense, std::move(rhs)});
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Row i reads  x_B(i) + sum_k t[i][k] x_N(k) = rhs[i];  objective z = z0 + sum_k c[k] x_N(k).
class Tableau {
 public:
  std::vector<std::size_t> basic;
  std::vector<std::size_t> nonbasic;
  std::vector<std::vector<Rational>> t;
  std::vector<Rational> rhs;
  std::vector<Rational> c;
  Rational z0;
  std::vector<bool> artificial;  // by column id
  std::size_t pivots = 0;

  // Returns false when unbounded.
  bool optimize() {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t k = 0; k < nonbasic.size(); ++k) {
        if (c[k] <= 0 || artificial[nonbasic[k]]) continue;
        if (enter == kNone || nonbasic[k] < nonbasic[enter]) enter = k;
      }
      if (enter == kNone) return true;

      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t i = 0; i < basic.size(); ++i) {
        if (t[i][enter] <= 0) continue;
        Rational ratio = rhs[i] / t[i][enter];
        if (leave == kNone || ratio < best_ratio || (ratio == best_ratio && basic[i] < basic[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t i, std::size_t k) {
    ++pivots;
    const Rational inv = 1 / t[i][k];
    auto& row = t[i];
    for (std::size_t j = 0; j < row.size(); ++j)
      if (j != k) row[j] *= inv;
    row[k] = inv;
    rhs[i] *= inv;

    for (std::size_t r = 0; r < t.size(); ++r) {
      if (r == i || t[r][k] == 0) continue;
      const Rational factor = t[r][k];
      auto& other = t[r];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (j != k && row[j] != 0) other[j] -= factor * row[j];
      other[k] = -factor * inv;
      rhs[r] -= factor * rhs[i];
    }
    if (c[k] != 0) {
      const Rational factor = c[k];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (j != k && row[j] != 0) c[j] -= factor * row[j];
      c[k] = -factor * inv;
      z0 += factor * rhs[i];
    }
    std::swap(basic[i], nonbasic[k]);
  }

  void drop_row(std::size_t i) {
    basic.erase(basic.begin() + static_cast<std::ptrdiff_t>(i));
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
    rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(i));
  }

  void drop_artificial_columns() {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < nonbasic.size(); ++k)
      if (!artificial[nonbasic[k]]) keep.push_back(k);
    if (keep.size() == nonbasic.size()) return;
    auto select = [&](auto& v) {
      std::remove_reference_t<decltype(v)> out;
      out.reserve(keep.size());
      for (auto k : keep) out.push_back(std::move(v[k]));
      v = std::move(out);
    };
    select(nonbasic);
    select(c);
    for (auto& row : t) select(row);
  }
};

}  // namespace

Solution maximize(const LinearProgram& program) {
  // Structural columns: one per nonnegative variable, two (x+ and x-) per free variable.
  std::vector<std::size_t> pos_col(program.num_variables()), neg_col(program.num_variables(), kNone);
  std::size_t next = 0;
  for (std::size_t v = 0; v < program.num_variables(); ++v) {
    pos_col[v] = next++;
    if (program.bounds()[v] == Bound::Free) neg_col[v] = next++;
  }
  const std::size_t structural = next;

  const auto& rows = program.rows();
  std::vector<std::size_t> surplus_col(rows.size(), kNone);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const bool flip = rows[r].rhs < 0;
    Sense sense = rows[r].sense;
    if (flip && sense != Sense::Equal) sense = sense == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
    if (sense == Sense::GreaterEqual) surplus_col[r] = next++;
  }

  Tableau tab;
  for (std::size_t j = 0; j < structural; ++j) tab.nonbasic.push_back(j);
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (surplus_col[r] != kNone) tab.nonbasic.push_back(surplus_col[r]);
  std::vector<std::size_t> col_position(next, kNone);
  for (std::size_t k = 0; k < tab.nonbasic.size(); ++k) col_position[tab.nonbasic[k]] = k;

  std::vector<std::size_t> artificial_rows;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Rational sign = rows[r].rhs < 0 ? -1 : 1;
    Sense sense = rows[r].sense;
    if (sign < 0 && sense != Sense::Equal) sense = sense == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
    std::vector<Rational> coeffs(tab.nonbasic.size(), Rational(0));
    for (const auto& term : rows[r].terms) {
      coeffs[col_position[pos_col[term.var]]] += sign * term.coeff;
      if (neg_col[term.var] != kNone) coeffs[col_position[neg_col[term.var]]] -= sign * term.coeff;
    }
    if (surplus_col[r] != kNone) coeffs[col_position[surplus_col[r]]] = -1;
    tab.t.push_back(std::move(coeffs));
    tab.rhs.push_back(sign * rows[r].rhs);
    tab.basic.push_back(next++);  // slack for <=, artificial otherwise
    if (sense != Sense::LessEqual) artificial_rows.push_back(r);
  }
  tab.artificial.assign(next, false);
  for (auto r : artificial_rows) tab.artificial[tab.basic[r]] = true;

  Solution solution;
  tab.c.assign(tab.nonbasic.size(), Rational(0));

  if (!artificial_rows.empty()) {
    tab.z0 = 0;
    for (auto r : artificial_rows) {
      tab.z0 -= tab.rhs[r];
      for (std::size_t k = 0; k < tab.nonbasic.size(); ++k) tab.c[k] += tab.t[r][k];
    }
    tab.optimize();  // bounded: objective is at most zero
    if (tab.z0 < 0) {
      solution.status = Status::Infeasible;
      solution.pivots = tab.pivots;
      return solution;
    }
    for (std::size_t i = tab.basic.size(); i-- > 0;) {
      if (!tab.artificial[tab.basic[i]]) continue;
      std::size_t enter = kNone;
      for (std::size_t k = 0; k < tab.nonbasic.size() && enter == kNone; ++k)
        if (!tab.artificial[tab.nonbasic[k]] && tab.t[i][k] != 0) enter = k;
      if (enter == kNone)
        tab.drop_row(i);  // redundant equality
      else
        tab.pivot(i, enter);
    }
    tab.drop_artificial_columns();
  }

  std::vector<Rational> cost(next, Rational(0));
  for (std::size_t v = 0; v < program.num_variables(); ++v) {
    cost[pos_col[v]] = program.objective()[v];
    if (neg_col[v] != kNone) cost[neg_col[v]] = -program.objective()[v];
  }
  tab.z0 = 0;
  for (std::size_t i = 0; i < tab.basic.size(); ++i) tab.z0 += cost[tab.basic[i]] * tab.rhs[i];
  tab.c.assign(tab.nonbasic.size(), Rational(0));
  for (std::size_t k = 0; k < tab.nonbasic.size(); ++k) {
    Rational reduced = cost[tab.nonbasic[k]];
    for (std::size_t i = 0; i < tab.basic.size(); ++i)
      if (cost[tab.basic[i]] != 0 && tab.t[i][k] != 0) reduced -= cost[tab.basic[i]] * tab.t[i][k];
    tab.c[k] = std::move(reduced);
  }

  const bool bounded = tab.optimize();
  solution.pivots = tab.pivots;
  if (!bounded) {
    solution.status = Status::Unbounded;
    return solution;
  }

  std::vector<Rational> column_value(next, Rational(0));
  for (std::size_t i = 0; i < tab.basic.size(); ++i) column_value[tab.basic[i]] = tab.rhs[i];
  solution.status = Status::Optimal;
  solution.value = tab.z0;
  solution.x.resize(program.num_variables());
  for (std::size_t v = 0; v < program.num_variables(); ++v) {
    solution.x[v] = column_value[pos_col[v]];
    if (neg_col[v] != kNone) solution.x[v] -= column_value[neg_col[v]];
  }
  return solution;
}

Solution minimize(const LinearProgram& program) {
  LinearProgram negated = program;
  for (std::size_t v = 0; v < program.num_variables(); ++v) negated.set_objective(v, -program.objective()[v]);
  Solution s = maximize(negated);
  s.value = -s.value;
  return s;
}

}  // namespace lipfree::lp
