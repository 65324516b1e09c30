#pragma once

// Dense univariate polynomials over the rationals, Sturm sequences and
// bisection-based real root isolation.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "crnmss/error.hpp"
#include "crnmss/rational.hpp"

namespace crnmss {

class UniPoly {
 public:
  UniPoly() = default;
  /// Coefficients by ascending degree.
  explicit UniPoly(RationalVector c) : c_(std::move(c)) { trim(); }

  static UniPoly monomial(const Rational& coeff, std::size_t degree) {
    RationalVector c(degree + 1, Rational(0));
    c[degree] = coeff;
    return UniPoly(std::move(c));
  }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
  [[nodiscard]] const RationalVector& coeffs() const { return c_; }
  [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  [[nodiscard]] Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  [[nodiscard]] Rational operator()(const Rational& x) const {
    Rational v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  [[nodiscard]] long double eval(long double x) const {
    long double v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i].get_d();
    return v;
  }

  [[nodiscard]] UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    RationalVector d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return UniPoly(std::move(d));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    RationalVector c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a) {
    RationalVector c = a.c_;
    for (auto& v : c) v = -v;
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RationalVector c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& a) {
    RationalVector c = a.c_;
    for (auto& v : c) v *= s;
    return UniPoly(std::move(c));
  }

  /// Quotient and remainder; throws ZeroPolynomial on division by zero.
  [[nodiscard]] std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    RationalVector r = c_;
    if (r.size() < d.c_.size()) return {UniPoly(), *this};
    RationalVector q(r.size() - d.c_.size() + 1, Rational(0));
    for (std::size_t k = q.size(); k-- > 0;) {
      const Rational f = r[k + d.c_.size() - 1] / d.c_.back();
      q[k] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

  /// Monic version (zero stays zero).
  [[nodiscard]] UniPoly monic() const {
    if (is_zero()) return {};
    return (1 / leading()) * *this;
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  RationalVector c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// p / gcd(p, p'): same roots, all simple.
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  const UniPoly g = gcd(p, p.derivative());
  return p.divmod(g).first;
}

/// p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
inline std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = seq[seq.size() - 2].divmod(seq.back()).second;
    seq.push_back(-r);
  }
  seq.pop_back();
  return seq;
}

namespace detail {

inline int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int variations_at(const std::vector<UniPoly>& seq, const Rational& x) {
  std::vector<int> signs;
  for (const auto& q : seq) signs.push_back(sign(q(x)));
  return sign_changes(signs);
}

inline int variations_at_infinity(const std::vector<UniPoly>& seq) {
  std::vector<int> signs;
  for (const auto& q : seq) signs.push_back(sign(q.leading()));
  return sign_changes(signs);
}

}  // namespace detail

/// Number of distinct real roots in (lo, hi], or (lo, +inf) when hi is empty.
inline int sturm_count(const UniPoly& p, const Rational& lo, const std::optional<Rational>& hi = std::nullopt) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Sturm count of the zero polynomial");
  const auto seq = sturm_sequence(squarefree_part(p));
  const int v_lo = detail::variations_at(seq, lo);
  const int v_hi = hi ? detail::variations_at(seq, *hi) : detail::variations_at_infinity(seq);
  return v_lo - v_hi;
}

/// Cauchy bound: every real root has |x| < bound.
inline Rational cauchy_bound(const UniPoly& p) {
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) m = std::max(m, Rational(abs(p.coeffs()[i] / p.leading())));
  return m + 1;
}

struct RootInterval {
  Rational lo;  // root lies in (lo, hi]
  Rational hi;
};

/// Isolates each distinct real root of p in (lo, hi] to an interval of
/// width at most `width`. Intervals come out in increasing order.
inline std::vector<RootInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi,
                                               const Rational& width) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "root isolation of the zero polynomial");
  const UniPoly sf = squarefree_part(p);
  const auto seq = sturm_sequence(sf);
  std::vector<RootInterval> out;
  std::vector<std::pair<RootInterval, int>> work{{{lo, hi}, detail::variations_at(seq, lo) - detail::variations_at(seq, hi)}};
  while (!work.empty()) {
    auto [iv, count] = work.back();
    work.pop_back();
    if (count == 0) continue;
    if (count == 1 && iv.hi - iv.lo <= width) {
      out.push_back(iv);
      continue;
    }
    const Rational mid = (iv.lo + iv.hi) / 2;
    const int left = detail::variations_at(seq, iv.lo) - detail::variations_at(seq, mid);
    // Push right first so the left half is processed first.
    work.push_back({{mid, iv.hi}, count - left});
    work.push_back({{iv.lo, mid}, left});
  }
  return out;
}

/// Isolates the roots of p in (lo, +inf).
inline std::vector<RootInterval> isolate_roots_above(const UniPoly& p, const Rational& lo, const Rational& width) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "root isolation of the zero polynomial");
  const Rational hi = std::max(cauchy_bound(p), Rational(lo + 1));
  return isolate_roots(p, lo, hi, width);
}

}  // namespace crnmss
