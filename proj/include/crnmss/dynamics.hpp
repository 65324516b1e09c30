#pragma once

// Mass-action ODEs, exact analysis of the two one-reaction atom families and
// a numeric steady-state scan for one-reaction fully open networks.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crnmss/classify.hpp"
#include "crnmss/error.hpp"
#include "crnmss/model.hpp"
#include "crnmss/poly.hpp"
#include "crnmss/rational.hpp"
#include "crnmss/verdict.hpp"

namespace crnmss {

using RateAssignment = std::map<Reaction, Rational>;

/// Sparse multivariate polynomial over the rationals; keys are exponent vectors.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPoly(std::size_t vars = 0) : vars_(vars) {}

  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }

  [[nodiscard]] std::size_t vars() const { return vars_; }
  [[nodiscard]] const std::map<Exponents, Rational>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] MultiPoly derivative(std::size_t j) const {
    MultiPoly d(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[j] == 0) continue;
      Exponents f = e;
      --f[j];
      d.add_term(f, c * e[j]);
    }
    return d;
  }

  [[nodiscard]] Rational operator()(const RationalVector& x) const {
    Rational v = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < vars_; ++i) t *= pow(x[i], static_cast<unsigned>(e[i]));
      v += t;
    }
    return v;
  }

  [[nodiscard]] long double eval(const std::vector<long double>& x) const { return eval_impl(x, false); }

  /// Sum of absolute term values: the scale a residual is measured against.
  [[nodiscard]] long double magnitude(const std::vector<long double>& x) const { return eval_impl(x, true); }

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  [[nodiscard]] long double eval_impl(const std::vector<long double>& x, bool absolute) const {
    long double v = 0;
    for (const auto& [e, c] : terms_) {
      long double t = c.get_d();
      for (std::size_t i = 0; i < vars_; ++i) t *= std::pow(x[i], static_cast<long double>(e[i]));
      v += absolute ? std::fabs(t) : t;
    }
    return v;
  }

  std::size_t vars_;
  std::map<Exponents, Rational> terms_;
};

/// Terms by increasing total degree; within a degree, earlier species first.
inline std::string format_polynomial(const MultiPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<MultiPoly::Exponents, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int e : a.first) da += e;
    for (int e : b.first) db += e;
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& [e, c] = terms[t];
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (t == 0) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += to_string(mag);
    else if (mag == 1) out += mono;
    else out += to_string(mag) + "*" + mono;
  }
  return out;
}

struct MassActionSystem {
  Network network;
  RateAssignment rates;
  std::vector<MultiPoly> rhs;
  std::vector<std::vector<MultiPoly>> jacobian;  // jacobian[i][j] = d rhs_i / d x_j

  [[nodiscard]] std::vector<long double> evaluate(const std::vector<long double>& x) const {
    std::vector<long double> out;
    for (const auto& f : rhs) out.push_back(f.eval(x));
    return out;
  }

  /// Largest |rhs_i(x)| relative to the size of its terms (at least 1).
  [[nodiscard]] double residual(const std::vector<long double>& x) const {
    long double worst = 0;
    for (const auto& f : rhs) worst = std::max(worst, std::fabs(f.eval(x)) / std::max<long double>(1, f.magnitude(x)));
    return static_cast<double>(worst);
  }

  [[nodiscard]] Eigen::MatrixXd jacobian_at(const std::vector<long double>& x) const {
    const auto s = static_cast<Eigen::Index>(rhs.size());
    Eigen::MatrixXd j(s, s);
    for (Eigen::Index r = 0; r < s; ++r)
      for (Eigen::Index c = 0; c < s; ++c)
        j(r, c) = static_cast<double>(jacobian[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].eval(x));
    return j;
  }

  /// Largest term magnitude over the Jacobian entries: the scale its
  /// singular values are measured against.
  [[nodiscard]] double jacobian_scale(const std::vector<long double>& x) const {
    long double scale = 0;
    for (const auto& row : jacobian)
      for (const auto& entry : row) scale = std::max(scale, entry.magnitude(x));
    return static_cast<double>(scale);
  }
};

/// rhs_i = sum_k kappa_k x^{y_k} (y'_k - y_k)_i with 0^0 = 1.
inline MassActionSystem mass_action_system(const Network& n, const RateAssignment& rates) {
  const std::size_t s = n.species_count();
  MassActionSystem sys{n, rates, std::vector<MultiPoly>(s, MultiPoly(s)), {}};
  for (const auto& r : n.reactions()) {
    auto it = rates.find(r);
    if (it == rates.end()) throw Error(ErrorCode::MissingRate, format_reaction(r, n.species()));
    if (it->second <= 0) throw Error(ErrorCode::NonpositiveRate, format_reaction(r, n.species()));
    const auto v = reaction_vector(r);
    for (std::size_t i = 0; i < s; ++i)
      if (v[i] != 0) sys.rhs[i].add_term(r.reactant.coeffs, it->second * v[i]);
  }
  sys.jacobian.assign(s, std::vector<MultiPoly>(s, MultiPoly(s)));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) sys.jacobian[i][j] = sys.rhs[i].derivative(j);
  return sys;
}

/// Symbolic rate names: k_X for 0 -> X, l_X for X -> 0, k1, k2, ... for the
/// remaining reactions in network order.
inline std::map<Reaction, std::string> rate_names(const Network& n) {
  std::map<Reaction, std::string> out;
  int next = 1;
  for (const auto& r : n.reactions()) {
    if (is_flow_reaction(r)) {
      const bool inflow = r.reactant.is_zero();
      const auto sp = inflow ? *r.product.single_species() : *r.reactant.single_species();
      out[r] = (inflow ? "k_" : "l_") + n.species()[sp];
    } else {
      out[r] = "k" + std::to_string(next++);
    }
  }
  return out;
}

/// One "dX/dt = ..." line per species. Reactions with a known rate use it;
/// the rest keep their symbolic name. One term per reaction, in network order.
inline std::vector<std::string> format_odes(const Network& n, const RateAssignment& known = {}) {
  const auto names = rate_names(n);
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < n.species_count(); ++i) {
    std::string body;
    for (const auto& r : n.reactions()) {
      const int v = r.product[i] - r.reactant[i];
      if (v == 0) continue;
      std::string mono;
      for (std::size_t j = 0; j < n.species_count(); ++j) {
        if (r.reactant[j] == 0) continue;
        mono += "*" + n.species()[j];
        if (r.reactant[j] > 1) mono += "^" + std::to_string(r.reactant[j]);
      }
      auto it = known.find(r);
      std::string term;
      bool negative = v < 0;
      if (it != known.end()) {
        const Rational c = it->second * v;
        negative = c < 0;
        term = to_string(abs(c));
        if (!mono.empty() && abs(c) == 1) term = mono.substr(1);
        else term += mono;
      } else {
        const int mag = std::abs(v);
        term = (mag == 1 ? "" : std::to_string(mag) + "*") + names.at(r) + mono;
      }
      if (body.empty()) body = negative ? "-" + term : term;
      else body += (negative ? " - " : " + ") + term;
    }
    lines.push_back("d" + n.species()[i] + "/dt = " + (body.empty() ? "0" : body));
  }
  return lines;
}

enum class Regime { Two, One, OneDegenerate, Zero };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Two: return "Two";
    case Regime::One: return "One";
    case Regime::OneDegenerate: return "OneDegenerate";
    case Regime::Zero: return "Zero";
  }
  return "?";
}

enum class Certainty { Exact, NumericIsolated };

inline const char* certainty_name(Certainty c) { return c == Certainty::Exact ? "Exact" : "NumericIsolated"; }

struct SteadyState {
  std::vector<double> x;
  std::optional<RationalVector> exact;  // when the state is rational and known exactly
  bool degenerate = false;
  double residual = 0;
  bool verified = false;  // residual below tolerance
};

struct SteadyStateSet {
  std::vector<SteadyState> states;
  Certainty count_certainty = Certainty::Exact;

  [[nodiscard]] std::size_t nondegenerate_count() const {
    return static_cast<std::size_t>(
        std::count_if(states.begin(), states.end(), [](const SteadyState& s) { return !s.degenerate; }));
  }
};

inline constexpr double kResidualTolerance = 1e-9;
inline constexpr double kSingularityRatio = 1e-8;

namespace detail {

inline void check_rates_positive(std::initializer_list<Rational> rates) {
  for (const auto& r : rates)
    if (r <= 0) throw Error(ErrorCode::NonpositiveRate, "rate constant " + to_string(r) + " is not positive");
}

inline Rational root_width() { return Rational(1, 1000000) * Rational(1, 1000000); }

inline long double midpoint(const RootInterval& iv) { return Rational((iv.lo + iv.hi) / 2).get_d(); }

// Exact sign test for (B + sigma sqrt(D)) / (2A) > t with A > 0 and D >= 0.
inline bool quadratic_root_exceeds(const Rational& A, const Rational& B, const Rational& D, int sigma,
                                   const Rational& t) {
  const Rational r = 2 * A * t - B;
  if (sigma > 0) return r < 0 || D > r * r;
  return r < 0 && D < r * r;
}

inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  return Rational(sqrt(num), sqrt(den));
}

}  // namespace detail

inline Network atom1_network(int a1, int a2) {
  if (!(a2 > a1 && a1 > 1)) throw Error(ErrorCode::BadExponents, "need a2 > a1 > 1");
  return fully_open_closure(build_network({"X"}, {{Complex({a1}), Complex({a2})}}));
}

inline Network atom2_network(int b1, int b2) {
  if (!(b1 > 1 && b2 > 1)) throw Error(ErrorCode::BadExponents, "need b1 > 1 and b2 > 1");
  return fully_open_closure(build_network({"X", "Y"}, {{Complex({1, 1}), Complex({b1, b2})}}));
}

struct Atom1Analysis {
  Rational k_star;
  Regime regime = Regime::Zero;
  int sturm_count = 0;
  UniPoly f;  // kX - lX x + k (a2 - a1) x^a1
  SteadyStateSet states;
};

/// k* = (1/(a2-a1)) (lX/a1)^a1 ((a1-1)/kX)^(a1-1); always rational.
inline Rational atom1_k_star(int a1, int a2, const Rational& kX, const Rational& lX) {
  if (!(a2 > a1 && a1 > 1)) throw Error(ErrorCode::BadExponents, "need a2 > a1 > 1");
  return pow(lX / a1, static_cast<unsigned>(a1)) * pow(Rational(a1 - 1) / kX, static_cast<unsigned>(a1 - 1)) /
         (a2 - a1);
}

inline Atom1Analysis atom1_analysis(int a1, int a2, const Rational& kX, const Rational& lX, const Rational& k) {
  if (!(a2 > a1 && a1 > 1)) throw Error(ErrorCode::BadExponents, "need a2 > a1 > 1");
  detail::check_rates_positive({kX, lX, k});
  Atom1Analysis out;
  out.k_star = atom1_k_star(a1, a2, kX, lX);
  out.regime = k < out.k_star ? Regime::Two : k == out.k_star ? Regime::OneDegenerate : Regime::Zero;
  out.f = UniPoly({kX, -lX}) + UniPoly::monomial(k * (a2 - a1), static_cast<std::size_t>(a1));
  out.sturm_count = sturm_count(out.f, 0);

  const int expected = out.regime == Regime::Two ? 2 : out.regime == Regime::OneDegenerate ? 1 : 0;
  if (out.sturm_count != expected)
    throw std::logic_error("atom1: Sturm count " + std::to_string(out.sturm_count) + " disagrees with regime " +
                           regime_name(out.regime));

  const UniPoly repeated = gcd(out.f, out.f.derivative());
  for (const auto& iv : isolate_roots_above(out.f, 0, detail::root_width())) {
    SteadyState st;
    st.degenerate = repeated.degree() > 0 && sturm_count(repeated, iv.lo, iv.hi) > 0;
    if (repeated.degree() == 1 && st.degenerate) {
      const Rational root = -repeated.coeff(0) / repeated.coeff(1);
      st.exact = RationalVector{root};
    } else if (out.f(iv.hi) == 0) {
      st.exact = RationalVector{iv.hi};
    }
    const long double x = st.exact ? (*st.exact)[0].get_d() : detail::midpoint(iv);
    st.x = {static_cast<double>(x)};
    const long double scale = std::max<long double>(1, kX.get_d() + lX.get_d() * x +
                                                           Rational(k * (a2 - a1)).get_d() * std::pow(x, static_cast<long double>(a1)));
    st.residual = static_cast<double>(std::fabs(out.f.eval(x)) / scale);
    st.verified = st.exact ? out.f((*st.exact)[0]) == 0 : st.residual < kResidualTolerance;
    out.states.states.push_back(std::move(st));
  }
  out.states.count_certainty = Certainty::Exact;
  return out;
}

struct Atom2Analysis {
  Rational H;
  Rational discriminant;  // of g, same sign as H - 1
  Regime regime = Regime::Zero;
  UniPoly g;  // kX - B x + A x^2
  SteadyStateSet states;
};

/// Steady states of X + Y -> b1 X + b2 Y with flows. Eliminating y from the
/// steady-state equations gives the quadratic g(x) = kX - B x + A x^2 with
///   A = k (b2 - 1) lX / lY,   B = lX + (k / lY)(kX (b2 - 1) - kY (b1 - 1)),
/// and H = B^2 / (4 A kX). A root is a positive steady state when x > 0 and
/// the y it determines is positive.
inline Atom2Analysis atom2_analysis(int b1, int b2, const Rational& kX, const Rational& kY, const Rational& lX,
                                    const Rational& lY, const Rational& k) {
  if (!(b1 > 1 && b2 > 1)) throw Error(ErrorCode::BadExponents, "need b1 > 1 and b2 > 1");
  detail::check_rates_positive({kX, kY, lX, lY, k});
  const Rational A = k * (b2 - 1) * lX / lY;
  const Rational B = lX + (k / lY) * (kX * (b2 - 1) - kY * (b1 - 1));
  const Rational D = B * B - 4 * A * kX;
  Atom2Analysis out;
  out.H = B * B / (4 * A * kX);
  out.discriminant = D;
  out.g = UniPoly({kX, -B, A});

  auto y_of = [&](const Rational& x) -> Rational { return kY / lY - (Rational(b2 - 1) / (b1 - 1)) * (kX - lX * x) / lY; };
  // y > 0  <=>  x > threshold.
  const Rational threshold = ((b2 - 1) * kX - (b1 - 1) * kY) / ((b2 - 1) * lX);
  const Rational lower = std::max(Rational(0), threshold);

  std::vector<int> sigmas;
  if (D == 0) sigmas = {1};
  else if (D > 0) sigmas = {-1, 1};
  const auto sqrt_d = detail::exact_sqrt(D);
  const auto sys = mass_action_system(
      atom2_network(b1, b2),
      {{{Complex({0, 0}), Complex({1, 0})}, kX},
       {{Complex({0, 0}), Complex({0, 1})}, kY},
       {{Complex({1, 0}), Complex({0, 0})}, lX},
       {{Complex({0, 1}), Complex({0, 0})}, lY},
       {{Complex({1, 1}), Complex({b1, b2})}, k}});
  for (int sigma : sigmas) {
    if (!detail::quadratic_root_exceeds(A, B, D, sigma, lower)) continue;
    SteadyState st;
    st.degenerate = D == 0;
    if (sqrt_d) {
      const Rational x = (B + sigma * *sqrt_d) / (2 * A);
      st.exact = RationalVector{x, y_of(x)};
      st.x = {(*st.exact)[0].get_d(), (*st.exact)[1].get_d()};
    } else {
      const long double root = (B.get_d() + sigma * std::sqrt(static_cast<long double>(D.get_d()))) / (2 * A.get_d());
      const long double y = kY.get_d() / lY.get_d() -
                            (static_cast<long double>(b2 - 1) / (b1 - 1)) * (kX.get_d() - lX.get_d() * root) / lY.get_d();
      st.x = {static_cast<double>(root), static_cast<double>(y)};
    }
    const std::vector<long double> xs{st.x[0], st.x[1]};
    st.residual = sys.residual(xs);
    st.verified = st.exact ? sys.rhs[0](*st.exact) == 0 && sys.rhs[1](*st.exact) == 0
                           : st.residual < kResidualTolerance;
    out.states.states.push_back(std::move(st));
  }
  const auto found = out.states.states.size();
  out.regime = found == 2 ? Regime::Two : found == 0 ? Regime::Zero : D == 0 ? Regime::OneDegenerate : Regime::One;
  out.states.count_certainty = Certainty::Exact;
  return out;
}

struct Atom1Witness {
  int a1 = 0, a2 = 0;
  Rational kX, lX, k, k_star;
  RateAssignment rates;
};

/// lX = 1 and k = k*/2, so two nondegenerate states exist.
inline Atom1Witness atom1_witness_params(int a1, int a2, const Rational& kX) {
  if (!(a2 > a1 && a1 > 1)) throw Error(ErrorCode::BadExponents, "need a2 > a1 > 1");
  detail::check_rates_positive({kX});
  Atom1Witness w{a1, a2, kX, Rational(1), 0, atom1_k_star(a1, a2, kX, 1), {}};
  w.k = w.k_star / 2;
  w.rates = {{{Complex({0}), Complex({1})}, w.kX},
             {{Complex({1}), Complex({0})}, w.lX},
             {{Complex({a1}), Complex({a2})}, w.k}};
  return w;
}

struct Atom2Witness {
  int b1 = 0, b2 = 0;
  Rational kX, kY, lX, lY, k, H;
  RateAssignment rates;
};

/// kY = kX (b2-1)/(b1-1), lX = kX + 1, k = 1 and lY = 2 (b2-1) lX, which
/// makes H = (kX + 1)^2 / (2 kX) > 1 and both roots give positive states.
inline Atom2Witness atom2_witness_params(int b1, int b2, const Rational& kX) {
  if (!(b1 > 1 && b2 > 1)) throw Error(ErrorCode::BadExponents, "need b1 > 1 and b2 > 1");
  detail::check_rates_positive({kX});
  Atom2Witness w;
  w.b1 = b1;
  w.b2 = b2;
  w.kX = kX;
  w.kY = kX * (b2 - 1) / (b1 - 1);
  w.lX = kX + 1;
  w.k = 1;
  w.lY = 2 * (b2 - 1) * w.lX;
  const Rational A = w.k * (b2 - 1) * w.lX / w.lY;
  const Rational B = w.lX + (w.k / w.lY) * (w.kX * (b2 - 1) - w.kY * (b1 - 1));
  w.H = B * B / (4 * A * w.kX);
  w.rates = {{{Complex({0, 0}), Complex({1, 0})}, w.kX},
             {{Complex({0, 0}), Complex({0, 1})}, w.kY},
             {{Complex({1, 0}), Complex({0, 0})}, w.lX},
             {{Complex({0, 1}), Complex({0, 0})}, w.lY},
             {{Complex({1, 1}), Complex({b1, b2})}, w.k}};
  return w;
}

namespace detail {

inline Rational flow_rate(const Network& n, const RateAssignment& rates, const Reaction& r) {
  auto it = rates.find(r);
  if (it == rates.end()) throw Error(ErrorCode::MissingRate, format_reaction(r, n.species()));
  return it->second;
}

/// Singular relative to both the largest singular value and the size of the
/// entries' terms; the latter matters when every entry nearly cancels.
inline bool singular(const Eigen::MatrixXd& j, double scale) {
  if (j.size() == 0) return false;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) < kSingularityRatio * std::max(sv(0), scale) || sv(0) == 0;
}

}  // namespace detail

/// Numeric scan of a one-reaction fully open network. At a steady state every
/// x_i = (k_i + (b_i - a_i) t) / l_i, where t is the net flux of the non-flow
/// reaction, so states are roots of the scalar function
///   h(t) = ka prod x_i(t)^a_i - kb prod x_i(t)^b_i - t
/// on the interval keeping every x_i positive.
inline SteadyStateSet one_reaction_steady_states(const Network& n, const RateAssignment& rates) {
  const std::size_t s = n.species_count();
  if (!is_fully_open(n)) throw Error(ErrorCode::NotOneReaction, "network is not fully open");
  const auto shape = one_reaction_shape(n);
  const bool flows_only = non_flow_reaction_indices(n).empty();
  if (!shape && !flows_only) throw Error(ErrorCode::NotOneReaction, "more than one non-flow reaction");
  const auto sys = mass_action_system(n, rates);

  std::vector<Rational> kin(s), kout(s);
  for (std::size_t i = 0; i < s; ++i) {
    kin[i] = detail::flow_rate(n, rates, {zero_complex(s), unit_complex(s, i)});
    kout[i] = detail::flow_rate(n, rates, {unit_complex(s, i), zero_complex(s)});
  }

  SteadyStateSet out;
  out.count_certainty = Certainty::NumericIsolated;
  auto record = [&](std::vector<long double> x) {
    SteadyState st;
    for (auto v : x) st.x.push_back(static_cast<double>(v));
    st.residual = sys.residual(x);
    st.verified = st.residual < kResidualTolerance;
    st.degenerate = detail::singular(sys.jacobian_at(x), sys.jacobian_scale(x));
    out.states.push_back(std::move(st));
  };

  if (flows_only) {
    std::vector<long double> x;
    RationalVector exact;
    for (std::size_t i = 0; i < s; ++i) {
      exact.push_back(kin[i] / kout[i]);
      x.push_back(exact.back().get_d());
    }
    record(x);
    out.states.back().exact = exact;
    out.count_certainty = Certainty::Exact;
    return out;
  }

  const Reaction& r = shape->reaction;
  const Rational ka = rates.at(r);
  const Rational kb = shape->reversible ? rates.at(r.reversed()) : Rational(0);
  std::vector<int> d(s);
  for (std::size_t i = 0; i < s; ++i) d[i] = r.product[i] - r.reactant[i];

  // Exact h(t) gives a root bound for the unbounded directions.
  auto product_poly = [&](const Complex& c) {
    UniPoly p(RationalVector{1});
    for (std::size_t i = 0; i < s; ++i)
      for (int e = 0; e < c[i]; ++e) p = p * UniPoly({kin[i] / kout[i], Rational(d[i]) / kout[i]});
    return p;
  };
  const UniPoly h = ka * product_poly(r.reactant) - kb * product_poly(r.product) - UniPoly({0, 1});
  if (h.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "scalar reduction vanishes identically");
  Rational lo_q = -cauchy_bound(h), hi_q = cauchy_bound(h);
  bool lo_open = false, hi_open = false;  // endpoint is a positivity boundary
  for (std::size_t i = 0; i < s; ++i) {
    if (d[i] == 0) continue;
    const Rational edge = -kin[i] / d[i];
    if (d[i] > 0 && edge >= lo_q) lo_q = edge, lo_open = true;
    if (d[i] < 0 && edge <= hi_q) hi_q = edge, hi_open = true;
  }
  const long double lo = lo_q.get_d(), hi = hi_q.get_d();

  auto conc = [&](long double t) {
    std::vector<long double> x(s);
    for (std::size_t i = 0; i < s; ++i) x[i] = (kin[i].get_d() + d[i] * t) / kout[i].get_d();
    return x;
  };
  const long double ka_d = ka.get_d(), kb_d = kb.get_d();
  auto hval = [&](long double t) {
    const auto x = conc(t);
    long double fa = ka_d, fb = kb_d;
    for (std::size_t i = 0; i < s; ++i) {
      fa *= std::pow(x[i], static_cast<long double>(r.reactant[i]));
      fb *= std::pow(x[i], static_cast<long double>(r.product[i]));
    }
    return fa - fb - t;
  };

  // Uniform grid plus geometric clustering at positivity boundaries and at 0.
  std::vector<long double> grid;
  const int points = 4096;
  const long double span = hi - lo;
  for (int k = 1; k < points; ++k) grid.push_back(lo + span * k / points);
  // Sixteen points per decade from 1e-12 up to the interval width.
  for (long double e = -12; std::pow(10.0L, e) < span; e += 1.0L / 16) {
    const long double step = std::pow(10.0L, e);
    for (long double t : {lo + step, hi - step, step, -step}) {
      if (t <= lo || t >= hi) continue;
      if ((t == lo + step && !lo_open) || (t == hi - step && !hi_open)) continue;
      grid.push_back(t);
    }
  }
  if (lo < 0 && hi > 0) grid.push_back(0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // Refine cells around local minima of |h| where a double crossing may hide.
  std::vector<long double> values;
  for (auto t : grid) values.push_back(hval(t));
  std::vector<long double> refined;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    refined.push_back(grid[k]);
    const bool local_min = k > 0 && k + 2 < grid.size() && std::fabs(values[k]) <= std::fabs(values[k - 1]) &&
                           std::fabs(values[k + 1]) <= std::fabs(values[k + 2]);
    if (local_min && (values[k] > 0) == (values[k + 1] > 0))
      for (int m = 1; m < 64; ++m) refined.push_back(grid[k] + (grid[k + 1] - grid[k]) * m / 64);
  }
  refined.push_back(grid.back());

  std::vector<long double> found;
  auto record_t = [&](long double t) {
    found.push_back(t);
    record(conc(t));
  };

  long double prev_t = refined.front(), prev_h = hval(prev_t);
  for (std::size_t k = 1; k < refined.size(); ++k) {
    const long double t = refined[k], ht = hval(t);
    if (prev_h == 0) {
      record_t(prev_t);
    } else if ((prev_h < 0) != (ht < 0) && ht != 0) {
      long double a = prev_t, b = t, fa = prev_h;
      for (int it = 0; it < 200 && b - a > 1e-12L * std::max<long double>(1, std::fabs(a)); ++it) {
        const long double m = (a + b) / 2, fm = hval(m);
        if (fm == 0) {
          a = b = m;
          break;
        }
        if ((fm < 0) == (fa < 0)) a = m, fa = fm;
        else b = m;
      }
      record_t((a + b) / 2);
    }
    prev_t = t;
    prev_h = ht;
  }

  // A root of even multiplicity touches zero without a sign change. Such
  // roots are exactly the roots of gcd(h, h') with no crossing nearby.
  const UniPoly repeated = gcd(h, h.derivative());
  if (repeated.degree() > 0) {
    for (const auto& iv : isolate_roots(repeated, lo_q, hi_q, detail::root_width())) {
      if (hi_open && iv.hi == hi_q && repeated(hi_q) == 0) continue;
      const long double t = detail::midpoint(iv);
      const bool seen = std::any_of(found.begin(), found.end(), [&](long double u) {
        return std::fabs(u - t) <= 1e-9L * std::max<long double>(1, std::fabs(t));
      });
      if (!seen) record_t(t);
    }
    std::vector<std::size_t> order(out.states.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return found[a] < found[b]; });
    std::vector<SteadyState> sorted;
    for (auto i : order) sorted.push_back(out.states[i]);
    out.states = std::move(sorted);
  }
  return out;
}

/// The atom network of a one-reaction atom witness, with rates from the
/// matching witness recipe, exact analysis and the numeric scan.
struct WitnessReport {
  AtomWitness atom;
  Network atom_network;
  RateAssignment rates;
  std::optional<Atom1Witness> atom1_params;
  std::optional<Atom1Analysis> atom1;
  std::optional<Atom2Witness> atom2_params;
  std::optional<Atom2Analysis> atom2;
  SteadyStateSet states;  // from one_reaction_steady_states on the atom network
};

/// kX = 1 by default; a seed draws kX = p/q with p in 1..9, q in 1..4.
inline Rational witness_inflow(std::optional<std::uint64_t> seed) {
  if (!seed) return 1;
  std::mt19937_64 rng(*seed);
  const auto p = static_cast<long>(rng() % 9 + 1);
  const auto q = static_cast<long>(rng() % 4 + 1);
  return make_rational(p, q);
}

inline WitnessReport build_witness(const AtomWitness& atom, std::optional<std::uint64_t> seed = std::nullopt) {
  WitnessReport w;
  w.atom = atom;
  const Rational kX = witness_inflow(seed);
  if (atom.form.kind == AtomForm::Kind::SingleSpecies) {
    const int a1 = atom.form.first, a2 = atom.form.second;
    w.atom_network = atom1_network(a1, a2);
    auto p = atom1_witness_params(a1, a2, kX);
    w.rates = p.rates;
    w.atom1 = atom1_analysis(a1, a2, p.kX, p.lX, p.k);
    w.atom1_params = std::move(p);
  } else {
    const int b1 = atom.form.first, b2 = atom.form.second;
    w.atom_network = atom2_network(b1, b2);
    auto p = atom2_witness_params(b1, b2, kX);
    w.rates = p.rates;
    w.atom2 = atom2_analysis(b1, b2, p.kX, p.kY, p.lX, p.lY, p.k);
    w.atom2_params = std::move(p);
  }
  w.states = one_reaction_steady_states(w.atom_network, w.rates);
  return w;
}

}  // namespace crnmss
