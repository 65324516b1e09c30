#pragma once

// Fourier-Motzkin elimination over the rationals with strictness tracking.
// Each constraint reads  a.x + c  (> | >= | =)  0.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "crnmss/error.hpp"
#include "crnmss/rational.hpp"

namespace crnmss::fm {

enum class Kind { Strict, NonStrict, Equal };

struct Constraint {
  RationalVector a;
  Rational c;
  Kind kind = Kind::NonStrict;
};

namespace detail {

// Positive rescaling so the first nonzero coefficient has magnitude one.
inline void normalize(Constraint& k) {
  Rational lead = 0;
  for (const auto& v : k.a)
    if (v != 0) {
      lead = abs(v);
      break;
    }
  if (lead == 0 || lead == 1) return;
  for (auto& v : k.a) v /= lead;
  k.c /= lead;
}

inline bool is_constant(const Constraint& k) {
  return std::all_of(k.a.begin(), k.a.end(), [](const Rational& v) { return v == 0; });
}

inline bool constant_holds(const Constraint& k) {
  switch (k.kind) {
    case Kind::Strict: return k.c > 0;
    case Kind::NonStrict: return k.c >= 0;
    case Kind::Equal: return k.c == 0;
  }
  return false;
}

// Drops exact duplicates; for identical (a, c) keeps the strictest.
inline std::vector<Constraint> dedupe(std::vector<Constraint> in) {
  std::vector<Constraint> out;
  for (auto& k : in) {
    auto same = std::find_if(out.begin(), out.end(), [&](const Constraint& o) {
      return o.a == k.a && o.c == k.c && o.kind != Kind::Equal && k.kind != Kind::Equal;
    });
    if (same != out.end()) {
      if (k.kind == Kind::Strict) same->kind = Kind::Strict;
      continue;
    }
    out.push_back(std::move(k));
  }
  return out;
}

struct Bounds {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
};

// Picks a simple value inside the (possibly open) interval.
inline Rational choose(const Bounds& b) {
  auto fits = [&](const Rational& v) {
    if (b.lo && (b.lo_strict ? !(v > *b.lo) : !(v >= *b.lo))) return false;
    if (b.hi && (b.hi_strict ? !(v < *b.hi) : !(v <= *b.hi))) return false;
    return true;
  };
  if (fits(0)) return 0;
  if (b.lo && b.hi && *b.lo == *b.hi) return *b.lo;
  if (b.lo) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), b.lo->get_num_mpz_t(), b.lo->get_den_mpz_t());
    for (int step = 0; step < 2; ++step) {
      Rational cand(f + step);
      if (fits(cand)) return cand;
    }
  }
  if (b.hi) {
    mpz_class f;
    mpz_cdiv_q(f.get_mpz_t(), b.hi->get_num_mpz_t(), b.hi->get_den_mpz_t());
    for (int step = 0; step < 2; ++step) {
      Rational cand(f - step);
      if (fits(cand)) return cand;
    }
  }
  Rational mid = (*b.lo + *b.hi) / 2;
  return mid;
}

}  // namespace detail

struct Options {
  std::size_t max_constraints = 50000;
};

/// Decides feasibility. Returns a satisfying point or nullopt. Throws
/// Error(BudgetExceeded) if intermediate systems grow past the limit.
inline std::optional<RationalVector> solve(std::vector<Constraint> system, std::size_t n,
                                           const Options& opts = {}) {
  for (auto& k : system) k.a.resize(n, Rational(0));

  // Equalities: substitute x_j = -(a'.x + c)/a_j.
  struct Substitution {
    std::size_t var;
    RationalVector expr;  // x_var = expr.x + expr_c
    Rational expr_c;
  };
  std::vector<Substitution> subs;
  while (true) {
    auto eq = std::find_if(system.begin(), system.end(), [](const Constraint& k) {
      return k.kind == Kind::Equal && !detail::is_constant(k);
    });
    if (eq == system.end()) break;
    std::size_t j = 0;
    while (eq->a[j] == 0) ++j;
    Substitution sub{j, RationalVector(n, Rational(0)), 0};
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) sub.expr[i] = -eq->a[i] / eq->a[j];
    sub.expr_c = -eq->c / eq->a[j];
    system.erase(eq);
    for (auto& k : system) {
      if (k.a[j] == 0) continue;
      const Rational f = k.a[j];
      k.a[j] = 0;
      for (std::size_t i = 0; i < n; ++i) k.a[i] += f * sub.expr[i];
      k.c += f * sub.expr_c;
    }
    subs.push_back(std::move(sub));
  }
  for (auto& k : system) detail::normalize(k);

  std::vector<bool> eliminated(n, false);
  for (const auto& s : subs) eliminated[s.var] = true;

  // Stages: stages[k] is the system before eliminating order[k].
  std::vector<std::vector<Constraint>> stages;
  std::vector<std::size_t> order;
  std::vector<Constraint> current = detail::dedupe(std::move(system));
  for (std::size_t var = 0; var < n; ++var) {
    if (eliminated[var]) continue;
    std::vector<Constraint> next, pos, neg;
    for (const auto& k : current) {
      if (k.a[var] > 0) pos.push_back(k);
      else if (k.a[var] < 0) neg.push_back(k);
      else next.push_back(k);
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Constraint r;
        const Rational wp = -q.a[var];
        const Rational wq = p.a[var];
        r.a.resize(n);
        for (std::size_t i = 0; i < n; ++i) r.a[i] = wp * p.a[i] + wq * q.a[i];
        r.a[var] = 0;
        r.c = wp * p.c + wq * q.c;
        r.kind = (p.kind == Kind::Strict || q.kind == Kind::Strict) ? Kind::Strict : Kind::NonStrict;
        detail::normalize(r);
        next.push_back(std::move(r));
      }
    }
    next = detail::dedupe(std::move(next));
    std::vector<Constraint> kept;
    for (auto& k : next) {
      if (detail::is_constant(k)) {
        if (!detail::constant_holds(k)) return std::nullopt;
      } else {
        kept.push_back(std::move(k));
      }
    }
    if (kept.size() > opts.max_constraints)
      throw Error(ErrorCode::BudgetExceeded, "Fourier-Motzkin system exceeded constraint limit");
    stages.push_back(std::move(current));
    order.push_back(var);
    current = std::move(kept);
  }
  for (const auto& k : current)
    if (!detail::constant_holds(k)) return std::nullopt;
  for (const auto& k : stages.empty() ? std::vector<Constraint>{} : stages.front())
    if (detail::is_constant(k) && !detail::constant_holds(k)) return std::nullopt;

  // Back-substitute in reverse elimination order.
  RationalVector x(n, Rational(0));
  for (std::size_t step = order.size(); step-- > 0;) {
    const std::size_t var = order[step];
    detail::Bounds b;
    for (const auto& k : stages[step]) {
      if (k.a[var] == 0) continue;
      // a_var * x_var + rest >=/> 0 with later variables already fixed and
      // earlier ones irrelevant (zero coefficient at this stage).
      Rational rest = k.c;
      for (std::size_t i = 0; i < n; ++i)
        if (i != var) rest += k.a[i] * x[i];
      const Rational bound = -rest / k.a[var];
      const bool strict = k.kind == Kind::Strict;
      if (k.a[var] > 0) {
        if (!b.lo || bound > *b.lo || (bound == *b.lo && strict)) {
          b.lo = bound;
          b.lo_strict = strict;
        }
      } else {
        if (!b.hi || bound < *b.hi || (bound == *b.hi && strict)) {
          b.hi = bound;
          b.hi_strict = strict;
        }
      }
    }
    x[var] = detail::choose(b);
  }
  for (std::size_t s = subs.size(); s-- > 0;) {
    const auto& sub = subs[s];
    Rational v = sub.expr_c;
    for (std::size_t i = 0; i < n; ++i) v += sub.expr[i] * x[i];
    x[sub.var] = v;
  }
  return x;
}

/// Exact substitution check.
inline bool satisfies(const std::vector<Constraint>& system, const RationalVector& x) {
  for (const auto& k : system) {
    Rational v = k.c;
    for (std::size_t i = 0; i < k.a.size() && i < x.size(); ++i) v += k.a[i] * x[i];
    switch (k.kind) {
      case Kind::Strict:
        if (!(v > 0)) return false;
        break;
      case Kind::NonStrict:
        if (!(v >= 0)) return false;
        break;
      case Kind::Equal:
        if (v != 0) return false;
        break;
    }
  }
  return true;
}

}  // namespace crnmss::fm
