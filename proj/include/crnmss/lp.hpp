#pragma once

// Exact phase-one simplex: decides whether a system of linear constraints
// over the rationals has a solution, and returns one if it does.

#include <cstddef>
#include <optional>
#include <vector>

#include "crnmss/rational.hpp"

namespace crnmss::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Constraint {
  RationalVector coeffs;  // a
  Sense sense = Sense::Equal;
  Rational rhs;           // b   (a.x sense b)
};

struct Problem {
  std::size_t variables = 0;
  std::vector<bool> free;  // per variable; default nonnegative
  std::vector<Constraint> constraints;

  explicit Problem(std::size_t n) : variables(n), free(n, false) {}

  void add(RationalVector a, Sense s, Rational b) {
    constraints.push_back(Constraint{std::move(a), s, std::move(b)});
  }
};

/// Phase one with Bland's rule. Returns a feasible point or nullopt.
inline std::optional<RationalVector> find_feasible_point(const Problem& p) {
  // Columns: original nonnegative parts, negative parts of free variables,
  // slack/surplus per inequality, then one artificial per row.
  const std::size_t n = p.variables;
  std::vector<std::size_t> neg_col(n, static_cast<std::size_t>(-1));
  std::size_t cols = n;
  for (std::size_t j = 0; j < n; ++j)
    if (p.free[j]) neg_col[j] = cols++;
  std::vector<std::size_t> slack_col(p.constraints.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < p.constraints.size(); ++i)
    if (p.constraints[i].sense != Sense::Equal) slack_col[i] = cols++;
  const std::size_t first_art = cols;
  const std::size_t m = p.constraints.size();
  cols += m;

  // Tableau rows: m constraint rows; last column is the right-hand side.
  std::vector<RationalVector> t(m, RationalVector(cols + 1, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    for (std::size_t j = 0; j < n && j < c.coeffs.size(); ++j) {
      t[i][j] = c.coeffs[j];
      if (p.free[j]) t[i][neg_col[j]] = -c.coeffs[j];
    }
    if (c.sense == Sense::LessEqual) t[i][slack_col[i]] = 1;
    if (c.sense == Sense::GreaterEqual) t[i][slack_col[i]] = -1;
    t[i][cols] = c.rhs;
    if (t[i][cols] < 0)
      for (auto& v : t[i]) v = -v;
    t[i][first_art + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = first_art + i;

  // Objective: minimize sum of artificials; reduced costs for nonbasic columns.
  RationalVector cost(cols + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < first_art || j == cols) cost[j] -= t[i][j];

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (cost[cols] != 0) return std::nullopt;  // -(sum of artificials) at optimum

  RationalVector values(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) values[basis[i]] = t[i][cols];
  RationalVector x(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = values[j];
    if (p.free[j]) x[j] -= values[neg_col[j]];
  }
  return x;
}

}  // namespace crnmss::lp
