#include <gtest/gtest.h>

#include <random>

#include "crnmss/fourier_motzkin.hpp"
#include "crnmss/linalg.hpp"
#include "crnmss/lp.hpp"

using namespace crnmss;

namespace {

linalg::Matrix ints(std::vector<std::vector<int>> m) { return linalg::to_rational(m); }

fm::Constraint con(std::vector<int> a, int c, fm::Kind k) {
  fm::Constraint out;
  for (int v : a) out.a.emplace_back(v);
  out.c = c;
  out.kind = k;
  return out;
}

// Determinant by cofactor expansion; oracle for rank on small matrices.
Rational det(const linalg::Matrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    linalg::Matrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      RationalVector row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    const Rational term = m[0][j] * det(minor);
    total += (j % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

// Rank as the largest nonzero minor.
std::size_t rank_by_minors(const linalg::Matrix& m, std::size_t cols) {
  const std::size_t rows = m.size();
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
      do {
        linalg::Matrix sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rsel[i]) continue;
          RationalVector row;
          for (std::size_t j = 0; j < cols; ++j)
            if (csel[j]) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        if (det(sub) != 0) return k;
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace

TEST(Linalg, RankAndNullspace) {
  auto m = ints({{-1, 1, 0}, {0, -1, 1}, {-1, 0, 1}});
  EXPECT_EQ(linalg::rank(m, 3), 2u);
  auto ns = linalg::nullspace(m, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& row : m) EXPECT_EQ(dot(row, ns[0]), 0);
}

TEST(Linalg, RankMatchesMinorOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(-2, 2), dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = dim(rng), c = dim(rng);
    std::vector<std::vector<int>> raw(r, std::vector<int>(c));
    for (auto& row : raw)
      for (auto& x : row) x = v(rng);
    const auto m = ints(raw);
    const auto rk = linalg::rank(m, c);
    EXPECT_EQ(rk, rank_by_minors(m, c));
    const auto ns = linalg::nullspace(m, c);
    EXPECT_EQ(ns.size() + rk, static_cast<std::size_t>(c));
    for (const auto& b : ns)
      for (const auto& row : m) EXPECT_EQ(dot(row, b), 0);
  }
}

TEST(Lp, FeasibleAndInfeasible) {
  lp::Problem p(2);
  p.add({1, 1}, lp::Sense::Equal, 3);
  p.add({1, -1}, lp::Sense::GreaterEqual, 1);
  auto x = lp::find_feasible_point(p);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0] + (*x)[1], 3);
  EXPECT_GE((*x)[0] - (*x)[1], 1);

  lp::Problem q(1);
  q.add({1}, lp::Sense::LessEqual, -1);  // x >= 0 and x <= -1
  EXPECT_FALSE(lp::find_feasible_point(q));

  lp::Problem f(1);
  f.free[0] = true;
  f.add({1}, lp::Sense::LessEqual, -1);
  auto y = lp::find_feasible_point(f);
  ASSERT_TRUE(y);
  EXPECT_LE((*y)[0], -1);
}

TEST(FourierMotzkin, Contradiction) {
  std::vector<fm::Constraint> sys{con({1}, 0, fm::Kind::Strict), con({-1}, 0, fm::Kind::Strict)};
  EXPECT_FALSE(fm::solve(sys, 1));
}

TEST(FourierMotzkin, StrictnessMatters) {
  // x >= 0 and -x >= 0 is feasible at 0; x > 0 and -x >= 0 is not.
  EXPECT_TRUE(fm::solve({con({1}, 0, fm::Kind::NonStrict), con({-1}, 0, fm::Kind::NonStrict)}, 1));
  EXPECT_FALSE(fm::solve({con({1}, 0, fm::Kind::Strict), con({-1}, 0, fm::Kind::NonStrict)}, 1));
}

TEST(FourierMotzkin, OneReactionSystem) {
  // 2 m1 + m2 > m1 > 0, m2 < 0.
  std::vector<fm::Constraint> sys{con({1, 1}, 0, fm::Kind::Strict), con({1, 0}, 0, fm::Kind::Strict),
                                  con({0, -1}, 0, fm::Kind::Strict)};
  auto x = fm::solve(sys, 2);
  ASSERT_TRUE(x);
  EXPECT_TRUE(fm::satisfies(sys, *x));
  // With a = (1, 1): m1 + m2 > m1 forces m2 > 0, contradicting m2 < 0.
  std::vector<fm::Constraint> bad{con({0, 1}, 0, fm::Kind::Strict), con({1, 0}, 0, fm::Kind::Strict),
                                  con({0, -1}, 0, fm::Kind::Strict)};
  EXPECT_FALSE(fm::solve(bad, 2));
}

TEST(FourierMotzkin, EqualitiesSubstituted) {
  std::vector<fm::Constraint> sys{con({1, -1, 0}, 0, fm::Kind::Equal), con({1, 1, 1}, -3, fm::Kind::Equal),
                                  con({0, 0, 1}, 0, fm::Kind::Strict)};
  auto x = fm::solve(sys, 3);
  ASSERT_TRUE(x);
  EXPECT_TRUE(fm::satisfies(sys, *x));
}

// Vertex oracle: strict systems become >= 1 after homogeneous scaling, so a
// bounded box makes feasibility decidable by checking basic points.
namespace {

bool oracle_feasible(const std::vector<fm::Constraint>& sys, std::size_t n) {
  std::vector<fm::Constraint> closed;
  for (auto k : sys) {
    if (k.kind == fm::Kind::Strict) {
      k.kind = fm::Kind::NonStrict;
      k.c -= 1;
    }
    closed.push_back(k);
  }
  const int box = 1000000;
  for (std::size_t i = 0; i < n; ++i) {
    fm::Constraint lo, hi;
    lo.a.assign(n, 0);
    hi.a.assign(n, 0);
    lo.a[i] = 1;
    lo.c = box;
    hi.a[i] = -1;
    hi.c = box;
    closed.push_back(lo);
    closed.push_back(hi);
  }
  // Try every n-subset of constraints as tight.
  const std::size_t m = closed.size();
  std::vector<bool> pick(m, false);
  std::fill(pick.end() - static_cast<long>(n), pick.end(), true);
  do {
    linalg::Matrix aug;
    for (std::size_t i = 0; i < m; ++i) {
      if (!pick[i]) continue;
      RationalVector row = closed[i].a;
      row.push_back(-closed[i].c);
      aug.push_back(row);
    }
    auto e = linalg::rref(aug, n + 1);
    if (e.pivots.size() != n || e.pivots.back() >= n) continue;
    RationalVector x(n);
    for (std::size_t r = 0; r < n; ++r) x[e.pivots[r]] = e.rows[r][n];
    if (fm::satisfies(closed, x)) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

}  // namespace

TEST(FourierMotzkin, AgreesWithVertexOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-2, 2), nvars(1, 3), ncons(1, 5), kind(0, 2);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = static_cast<std::size_t>(nvars(rng));
    std::vector<fm::Constraint> sys;
    const int m = ncons(rng);
    for (int k = 0; k < m; ++k) {
      std::vector<int> a(n);
      for (auto& v : a) v = coef(rng);
      const int kk = kind(rng);
      sys.push_back(con(a, 0, kk == 0 ? fm::Kind::Strict : kk == 1 ? fm::Kind::NonStrict : fm::Kind::Equal));
    }
    // At least one strict relation so the zero vector is not a trivial answer.
    sys.front().kind = fm::Kind::Strict;
    auto x = fm::solve(sys, n);
    const bool expected = oracle_feasible(sys, n);
    EXPECT_EQ(x.has_value(), expected);
    if (x) {
      EXPECT_TRUE(fm::satisfies(sys, *x));
      ++feasible;
    } else {
      ++infeasible;
    }
  }
  EXPECT_GT(feasible, 20);
  EXPECT_GT(infeasible, 20);
}
