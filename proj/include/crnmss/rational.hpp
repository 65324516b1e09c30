#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crnmss {

/// Exact rational number. Always canonical (reduced, positive denominator).
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline int sign(const Rational& q) { return sgn(q); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact conversion of a finite double.
inline Rational rational_from_double(double v) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), v);
  return q;
}

/// Parses "p", "p/q" or a decimal literal ("1.25", "3e-2") into an exact
/// rational. Leading '+' or '-' is accepted. Returns nullopt on malformed
/// input or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::string& out) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      out.push_back(text[pos]);
      ++pos;
    }
    return pos > start;
  };
  std::string int_part;
  std::string frac_part;
  const bool has_int = digits(int_part);
  if (pos < text.size() && text[pos] == '/') {
    if (!has_int) return std::nullopt;
    ++pos;
    std::string den;
    if (!digits(den) || pos != text.size()) return std::nullopt;
    mpz_class d(den, 10);
    if (d == 0) return std::nullopt;
    Rational q(mpz_class(int_part, 10), d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  bool has_frac = false;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    has_frac = digits(frac_part);
  }
  if (!has_int && !has_frac) return std::nullopt;
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    std::string exp_digits;
    if (!digits(exp_digits) || exp_digits.size() > 6) return std::nullopt;
    exponent = std::stol(exp_digits);
    if (exp_negative) exponent = -exponent;
  }
  if (pos != text.size()) return std::nullopt;

  mpz_class mantissa(int_part.empty() && frac_part.empty() ? std::string("0")
                                                           : int_part + frac_part, 10);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

/// Integer exponentiation by squaring.
inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

/// Scales a nonzero vector by a positive factor so that its entries are
/// coprime integers. The zero vector is returned unchanged.
inline RationalVector primitive_integer(RationalVector v) {
  mpz_class lcm_den = 1;
  for (const auto& q : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  mpz_class content = 0;
  for (auto& q : v) {
    q *= lcm_den;
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), q.get_num_mpz_t());
  }
  if (content == 0) return v;
  for (auto& q : v) {
    q /= content;
    q.canonicalize();
  }
  return v;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<std::string> to_strings(const RationalVector& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

}  // namespace crnmss
