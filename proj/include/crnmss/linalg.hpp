#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "crnmss/rational.hpp"

namespace crnmss::linalg {

using Matrix = std::vector<RationalVector>;

struct Echelon {
  Matrix rows;                       // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form over the rationals.
inline Echelon rref(Matrix m, std::size_t cols) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    e.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  e.rows = std::move(m);
  return e;
}

inline std::size_t rank(const Matrix& m, std::size_t cols) { return rref(m, cols).pivots.size(); }

/// Basis of {x : m x = 0}, one vector per free column, in column order.
inline Matrix nullspace(const Matrix& m, std::size_t cols) {
  const Echelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename Int>
Matrix to_rational(const std::vector<std::vector<Int>>& m) {
  Matrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    RationalVector r;
    r.reserve(row.size());
    for (auto v : row) r.emplace_back(static_cast<long>(v));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace crnmss::linalg
