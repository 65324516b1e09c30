#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "crnmss/dynamics.hpp"

using namespace crnmss;

namespace {

Network net(std::string_view text) { return parse_network(text).network; }

UniPoly poly(std::initializer_list<long> c) {
  RationalVector v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(v);
}

// Product of (x - r) over the given roots.
UniPoly from_roots(const std::vector<Rational>& roots) {
  UniPoly p(RationalVector{1});
  for (const auto& r : roots) p = p * UniPoly(RationalVector{-r, 1});
  return p;
}

Rational random_rate(std::mt19937_64& rng) {
  return make_rational(static_cast<long>(rng() % 20 + 1), static_cast<long>(rng() % 5 + 1));
}

RateAssignment random_rates(const Network& n, std::mt19937_64& rng) {
  RateAssignment rates;
  for (const auto& r : n.reactions()) rates[r] = random_rate(rng);
  return rates;
}

std::size_t nondegenerate(const SteadyStateSet& set) { return set.nondegenerate_count(); }

}  // namespace

TEST(Sturm, AtomQuinticCounts) {
  // 150 x^5 - 15 x + 4 and 300 x^5 - 15 x + 4 are the atom1 polynomials at k = 50 and 100.
  EXPECT_EQ(sturm_count(UniPoly({4, -15, 0, 0, 0, 150}), 0), 2);
  EXPECT_EQ(sturm_count(UniPoly({4, -15, 0, 0, 0, 300}), 0), 0);
  EXPECT_EQ(sturm_count(poly({-1, 0, 1}), 0), 1);
  EXPECT_EQ(sturm_count(poly({-1, 0, 1}), -2), 2);
  EXPECT_EQ(sturm_count(poly({-1, 0, 1}), -2, Rational(1)), 2);  // (lo, hi] includes hi
  EXPECT_EQ(sturm_count(poly({-1, 0, 1}), -1, Rational(0)), 0);
}

TEST(Sturm, RepeatedRootsCountOnce) {
  const auto p = from_roots({1, 1, 1, 2, 3, 3});
  EXPECT_EQ(sturm_count(p, 0), 3);
  EXPECT_EQ(squarefree_part(p).degree(), 3);
  EXPECT_EQ(gcd(p, p.derivative()).degree(), 3);
}

TEST(Sturm, CountsAgreeWithKnownRoots) {
  // Oracle: polynomials built from explicit rational roots times an
  // irreducible quadratic, counted directly.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> roots;
    const int m = static_cast<int>(rng() % 5);
    for (int i = 0; i < m; ++i)
      roots.push_back(make_rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 3 + 1)));
    UniPoly p = from_roots(roots) * UniPoly({static_cast<long>(rng() % 5 + 1), 0, 1});
    p = Rational(static_cast<long>(rng() % 5) + 1) * p;  // scaling leaves the roots alone
    const Rational lo = make_rational(static_cast<long>(rng() % 21) - 10, 2);
    const Rational hi = lo + make_rational(static_cast<long>(rng() % 20 + 1), 2);
    std::vector<Rational> distinct = roots;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const auto inside = std::count_if(distinct.begin(), distinct.end(),
                                      [&](const Rational& r) { return r > lo && r <= hi; });
    const auto above = std::count_if(distinct.begin(), distinct.end(), [&](const Rational& r) { return r > lo; });
    ASSERT_EQ(sturm_count(p, lo, hi), inside) << "trial " << trial;
    ASSERT_EQ(sturm_count(p, lo), above) << "trial " << trial;

    const auto ivs = isolate_roots(p, lo, hi, Rational(1, 1000));
    ASSERT_EQ(static_cast<long>(ivs.size()), inside);
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      EXPECT_LE(Rational(ivs[i].hi - ivs[i].lo), Rational(1, 1000));
      EXPECT_EQ(sturm_count(p, ivs[i].lo, ivs[i].hi), 1);
      if (i > 0) {
        EXPECT_LE(ivs[i - 1].hi, ivs[i].lo);
      }
    }
  }
}

TEST(Sturm, CauchyBoundContainsRoots) {
  const auto p = from_roots({-7, make_rational(1, 3), 12});
  const Rational b = cauchy_bound(p);
  EXPECT_GT(b, 12);
  EXPECT_EQ(sturm_count(p, -b, b), 3);
}

TEST(Poly, DivisionIdentity) {
  const auto a = poly({3, 0, -2, 5, 1});
  const auto b = poly({1, 2});
  const auto [q, r] = a.divmod(b);
  EXPECT_LT(r.degree(), b.degree());
  EXPECT_EQ((q * b + r).coeffs(), a.coeffs());
  EXPECT_THROW((void)a.divmod(UniPoly{}), Error);
}

TEST(Atom1, WorkedExample) {
  // (a1, a2, kX, lX) = (5, 8, 4, 15).
  EXPECT_EQ(atom1_k_star(5, 8, 4, 15), 81);

  const auto two = atom1_analysis(5, 8, 4, 15, 50);
  EXPECT_EQ(two.regime, Regime::Two);
  EXPECT_EQ(two.sturm_count, 2);
  ASSERT_EQ(two.states.states.size(), 2u);
  EXPECT_NEAR(two.states.states[0].x[0], 0.285702, 1e-6);
  EXPECT_NEAR(two.states.states[1].x[0], 0.448851, 1e-6);
  EXPECT_EQ(nondegenerate(two.states), 2u);

  const auto one = atom1_analysis(5, 8, 4, 15, 81);
  EXPECT_EQ(one.regime, Regime::OneDegenerate);
  ASSERT_EQ(one.states.states.size(), 1u);
  ASSERT_TRUE(one.states.states[0].exact);
  EXPECT_EQ((*one.states.states[0].exact)[0], Rational(1, 3));
  EXPECT_TRUE(one.states.states[0].degenerate);

  const auto none = atom1_analysis(5, 8, 4, 15, 100);
  EXPECT_EQ(none.regime, Regime::Zero);
  EXPECT_TRUE(none.states.states.empty());
}

TEST(Atom1, RejectsBadInput) {
  EXPECT_THROW(atom1_analysis(1, 3, 1, 1, 1), Error);
  EXPECT_THROW(atom1_analysis(3, 3, 1, 1, 1), Error);
  EXPECT_THROW(atom1_analysis(2, 3, 1, 0, 1), Error);
  EXPECT_THROW(atom1_network(4, 2), Error);
}

TEST(Atom1, RegimeBoundaryProperty) {
  // Oracle: f = kX - lX x + c x^a1 is convex on x > 0 with f(0) > 0, so it has
  // two positive roots iff its minimum is negative. The minimizer is
  // x0 = (lX / (c a1))^(1/(a1-1)).
  std::mt19937_64 rng(11);
  for (int a1 = 2; a1 <= 6; ++a1) {
    for (int a2 = a1 + 1; a2 <= 6 + 1; ++a2) {
      for (int trial = 0; trial < 6; ++trial) {
        const Rational kX = random_rate(rng), lX = random_rate(rng);
        const Rational ks = atom1_k_star(a1, a2, kX, lX);
        // At k* the polynomial has a repeated positive root.
        const auto at = atom1_analysis(a1, a2, kX, lX, ks);
        EXPECT_GT(gcd(at.f, at.f.derivative()).degree(), 0);
        EXPECT_EQ(at.sturm_count, 1);
        ASSERT_EQ(at.states.states.size(), 1u);
        EXPECT_TRUE(at.states.states[0].degenerate);
        EXPECT_TRUE(at.states.states[0].verified);
        for (const Rational& k : {Rational(ks * Rational(9, 10)), Rational(ks * Rational(11, 10))}) {
          const long double c = Rational(k * (a2 - a1)).get_d();
          const long double x0 = std::pow(lX.get_d() / (c * a1), 1.0L / (a1 - 1));
          const long double fmin = kX.get_d() - lX.get_d() * x0 + c * std::pow(x0, static_cast<long double>(a1));
          const auto res = atom1_analysis(a1, a2, kX, lX, k);
          EXPECT_EQ(res.regime, fmin < 0 ? Regime::Two : Regime::Zero) << a1 << " " << a2;
          EXPECT_EQ(res.sturm_count, k < ks ? 2 : 0);
          EXPECT_EQ(res.states.states.size(), fmin < 0 ? 2u : 0u);
          for (const auto& st : res.states.states) {
            EXPECT_TRUE(st.verified);
            EXPECT_FALSE(st.degenerate);
          }
        }
      }
    }
  }
}

TEST(Atom1, ScanMatchesExactAnalysis) {
  const auto n = atom1_network(5, 8);
  for (long k : {50, 100}) {
    RateAssignment rates{{{Complex({0}), Complex({1})}, 4},
                         {{Complex({1}), Complex({0})}, 15},
                         {{Complex({5}), Complex({8})}, k}};
    const auto scan = one_reaction_steady_states(n, rates);
    const auto exact = atom1_analysis(5, 8, 4, 15, k);
    ASSERT_EQ(scan.states.size(), exact.states.states.size());
    for (std::size_t i = 0; i < scan.states.size(); ++i) {
      EXPECT_NEAR(scan.states[i].x[0], exact.states.states[i].x[0], 1e-9);
      EXPECT_LT(scan.states[i].residual, kResidualTolerance);
      EXPECT_FALSE(scan.states[i].degenerate);
    }
  }
}

TEST(Atom1, ScanFindsTangentialRoot) {
  // At k = k* the root 1/3 is a double root, so h has no sign change there.
  RateAssignment rates{{{Complex({0}), Complex({1})}, 4},
                       {{Complex({1}), Complex({0})}, 15},
                       {{Complex({5}), Complex({8})}, 81}};
  const auto scan = one_reaction_steady_states(atom1_network(5, 8), rates);
  ASSERT_EQ(scan.states.size(), 1u);
  EXPECT_NEAR(scan.states[0].x[0], 1.0 / 3, 1e-9);
  EXPECT_TRUE(scan.states[0].degenerate);
  EXPECT_EQ(nondegenerate(scan), 0u);
}

TEST(Atom2, WorkedCases) {
  // b1 = b2 = 2, kX = kY, lY = 2 k lX, evaluated at k = 1/4.
  const Rational k(1, 4);
  const auto zero = atom2_analysis(2, 2, 1, 1, 1, 2 * k, k);
  EXPECT_EQ(zero.regime, Regime::Zero);
  EXPECT_EQ(zero.H, Rational(1, 2));
  EXPECT_TRUE(zero.states.states.empty());

  const auto one = atom2_analysis(2, 2, 2, 2, 2, 4 * k, k);
  EXPECT_EQ(one.regime, Regime::OneDegenerate);
  EXPECT_EQ(one.H, 1);
  ASSERT_EQ(one.states.states.size(), 1u);
  ASSERT_TRUE(one.states.states[0].exact);
  EXPECT_EQ(*one.states.states[0].exact, (RationalVector{2, 16 * k}));
  EXPECT_TRUE(one.states.states[0].verified);

  const auto two = atom2_analysis(2, 2, 1, 1, 2, 4 * k, k);
  EXPECT_EQ(two.regime, Regime::Two);
  EXPECT_EQ(two.H, 2);
  ASSERT_EQ(two.states.states.size(), 2u);
  const double r2 = std::sqrt(2.0), kd = k.get_d();
  EXPECT_NEAR(two.states.states[0].x[0], 2 - r2, 1e-9);
  EXPECT_NEAR(two.states.states[0].x[1], 8 * kd * (2 - r2), 1e-9);
  EXPECT_NEAR(two.states.states[1].x[0], 2 + r2, 1e-9);
  EXPECT_NEAR(two.states.states[1].x[1], 8 * kd * (2 + r2), 1e-9);
  for (const auto& st : two.states.states) {
    EXPECT_FALSE(st.degenerate);
    EXPECT_LT(st.residual, kResidualTolerance);
  }
}

TEST(Atom2, StatesSolveTheFullSystem) {
  // Oracle: every reported state zeroes both ODE right-hand sides, and the
  // count never exceeds what the discriminant allows.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const int b1 = static_cast<int>(rng() % 4 + 2), b2 = static_cast<int>(rng() % 4 + 2);
    const Rational kX = random_rate(rng), kY = random_rate(rng), lX = random_rate(rng), lY = random_rate(rng);
    const Rational k = random_rate(rng);
    const auto res = atom2_analysis(b1, b2, kX, kY, lX, lY, k);
    const std::size_t cap = res.discriminant > 0 ? 2 : res.discriminant == 0 ? 1 : 0;
    EXPECT_LE(res.states.states.size(), cap);
    const auto sys = mass_action_system(atom2_network(b1, b2),
                                        {{{Complex({0, 0}), Complex({1, 0})}, kX},
                                         {{Complex({0, 0}), Complex({0, 1})}, kY},
                                         {{Complex({1, 0}), Complex({0, 0})}, lX},
                                         {{Complex({0, 1}), Complex({0, 0})}, lY},
                                         {{Complex({1, 1}), Complex({b1, b2})}, k}});
    const auto scan = one_reaction_steady_states(atom2_network(b1, b2), sys.rates);
    EXPECT_EQ(scan.states.size(), res.states.states.size()) << "trial " << trial;
    for (const auto& st : res.states.states) {
      EXPECT_GT(st.x[0], 0);
      EXPECT_GT(st.x[1], 0);
      EXPECT_LT(sys.residual({st.x[0], st.x[1]}), 1e-8);
    }
  }
}

TEST(Atom2, WitnessRecipeIsSound) {
  for (int b1 = 2; b1 <= 6; ++b1) {
    for (int b2 = 2; b2 <= 6; ++b2) {
      for (const Rational& kX : {Rational(1), Rational(1, 3), Rational(7, 2)}) {
        const auto w = atom2_witness_params(b1, b2, kX);
        EXPECT_GT(w.H, 1);
        const auto res = atom2_analysis(b1, b2, w.kX, w.kY, w.lX, w.lY, w.k);
        EXPECT_EQ(res.regime, Regime::Two) << b1 << " " << b2;
        EXPECT_EQ(nondegenerate(res.states), 2u);
        const auto scan = one_reaction_steady_states(atom2_network(b1, b2), w.rates);
        EXPECT_EQ(nondegenerate(scan), 2u) << b1 << " " << b2;
      }
    }
  }
  const auto w = atom2_witness_params(3, 2, 1);
  EXPECT_EQ(w.kY, Rational(1, 2));
  EXPECT_EQ(w.lX, 2);
  EXPECT_EQ(w.H, 2);
}

TEST(Atom1, WitnessRecipeIsSound) {
  for (int a1 = 2; a1 <= 5; ++a1) {
    for (int a2 = a1 + 1; a2 <= 6; ++a2) {
      const auto w = atom1_witness_params(a1, a2, Rational(3, 2));
      EXPECT_EQ(w.k, w.k_star / 2);
      const auto scan = one_reaction_steady_states(atom1_network(a1, a2), w.rates);
      EXPECT_EQ(nondegenerate(scan), 2u) << a1 << " " << a2;
    }
  }
}

TEST(Witness, EveryMssNetworkWithTwoSpecies) {
  // Exhaustive over s <= 2 and coefficients <= 4: whenever the one-reaction
  // criterion says MSS, each atom's witness rates give 2 nondegenerate states.
  int checked = 0;
  for (std::size_t s = 1; s <= 2; ++s) {
    std::vector<std::vector<int>> complexes;
    for (int i = 0; i < 25; ++i) {
      if (s == 1 && i > 4) break;
      complexes.push_back(s == 1 ? std::vector<int>{i} : std::vector<int>{i % 5, i / 5});
    }
    for (const auto& a : complexes)
      for (const auto& b : complexes) {
        const Reaction r{Complex(a), Complex(b)};
        if (a == b || is_flow_reaction(r)) continue;
        for (bool rev : {false, true}) {
          std::vector<std::string> names{"A", "B"};
          names.resize(s);
          std::vector<Reaction> rs{r};
          if (rev) rs.push_back(r.reversed());
          for (std::size_t i = 0; i < s; ++i) {
            rs.push_back({zero_complex(s), unit_complex(s, i)});
            rs.push_back({unit_complex(s, i), zero_complex(s)});
          }
          const auto n = build_network(names, rs);
          const auto v = one_reaction_mss(n);
          if (v.outcome != Outcome::Mss) continue;
          ASSERT_FALSE(v.atoms.empty());
          for (const auto& atom : v.atoms) {
            const auto w = build_witness(atom);
            ++checked;
            EXPECT_EQ(w.states.states.size(), 2u) << format_reaction(r, names) << (rev ? " rev" : "");
            EXPECT_EQ(nondegenerate(w.states), 2u) << format_reaction(r, names);
          }
        }
      }
  }
  EXPECT_GT(checked, 100);
}

TEST(MassAction, JacobianMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> texts = {"@fully_open\nA + B <-> 2 A", "@fully_open\n2 A + B -> 3 A + C",
                                          "A + 2 B -> 3 C\nC <-> 0\nA -> B", "X + Y -> 2 X + 2 Y\n0 <-> X\n0 <-> Y"};
  for (const auto& text : texts) {
    const auto n = net(text);
    for (int trial = 0; trial < 25; ++trial) {
      const auto sys = mass_action_system(n, random_rates(n, rng));
      std::vector<long double> x(n.species_count());
      for (auto& v : x) v = 0.1L + static_cast<long double>(rng() % 1000) / 250.0L;
      const auto j = sys.jacobian_at(x);
      for (std::size_t c = 0; c < x.size(); ++c) {
        const long double h = 1e-6L * std::max<long double>(1, x[c]);
        auto up = x, down = x;
        up[c] += h;
        down[c] -= h;
        const auto fu = sys.evaluate(up), fd = sys.evaluate(down);
        for (std::size_t r = 0; r < x.size(); ++r) {
          const long double fdiff = (fu[r] - fd[r]) / (2 * h);
          const long double exact = j(static_cast<long>(r), static_cast<long>(c));
          EXPECT_LE(std::fabs(fdiff - exact), 1e-6L * std::max<long double>(1, std::fabs(exact))) << text;
        }
      }
    }
  }
}

TEST(MassAction, RateErrors) {
  const auto n = net("0 <-> X");
  EXPECT_THROW(mass_action_system(n, {{{Complex({0}), Complex({1})}, 1}}), Error);
  try {
    mass_action_system(n, {{{Complex({0}), Complex({1})}, 1}, {{Complex({1}), Complex({0})}, 0}});
    FAIL() << "expected NonpositiveRate";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonpositiveRate);
  }
}

TEST(MassAction, PureFlowHasExactState) {
  const auto n = net("0 <-> X");
  const auto set = one_reaction_steady_states(n, {{{Complex({0}), Complex({1})}, 3}, {{Complex({1}), Complex({0})}, 1}});
  ASSERT_EQ(set.states.size(), 1u);
  EXPECT_EQ(set.count_certainty, Certainty::Exact);
  ASSERT_TRUE(set.states[0].exact);
  EXPECT_EQ((*set.states[0].exact)[0], 3);
  EXPECT_FALSE(set.states[0].degenerate);
}

TEST(MassAction, ScanRejectsNonOneReaction) {
  const auto n = net("@fully_open\nA -> B\nB -> 2 A");
  std::mt19937_64 rng(1);
  EXPECT_THROW(one_reaction_steady_states(n, random_rates(n, rng)), Error);
  const auto closed = net("A + B -> 2 A");
  EXPECT_THROW(one_reaction_steady_states(closed, random_rates(closed, rng)), Error);
}

TEST(MassAction, M1NeverHasTwoStates) {
  const auto n = net("@fully_open\nA + B <-> 2 A");
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto set = one_reaction_steady_states(n, random_rates(n, rng));
    ASSERT_LE(set.states.size(), 1u) << "trial " << trial;
  }
}

TEST(MassAction, FormatOdes) {
  const auto n = net("@fully_open\n5 X -> 8 X");
  const auto lines = format_odes(n);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], "dX/dt = k_X - l_X*X + 3*k1*X^5");
  const auto names = rate_names(n);
  EXPECT_EQ(names.at({Complex({0}), Complex({1})}), "k_X");
  EXPECT_EQ(names.at({Complex({1}), Complex({0})}), "l_X");
  EXPECT_EQ(names.at({Complex({5}), Complex({8})}), "k1");

  const auto known = format_odes(n, {{{Complex({5}), Complex({8})}, 2}});
  EXPECT_EQ(known[0].find("k1"), std::string::npos);
  EXPECT_NE(known[0].find("k_X"), std::string::npos);
}

TEST(Witness, BuildsFromSeed) {
  EXPECT_EQ(witness_inflow(std::nullopt), 1);
  EXPECT_EQ(witness_inflow(42), witness_inflow(42));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Rational kX = witness_inflow(seed);
    EXPECT_GT(kX, 0);
    EXPECT_LE(kX, 9);
  }
  const auto atoms = find_one_reaction_atoms(net("@fully_open\n2 A + B <-> 3 A"));
  ASSERT_FALSE(atoms.empty());
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto w = build_witness(atoms.front(), seed);
    EXPECT_EQ(nondegenerate(w.states), 2u);
    for (const auto& st : w.states.states) EXPECT_LT(st.residual, kResidualTolerance);
  }
}
