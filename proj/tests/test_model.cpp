#include <gtest/gtest.h>

#include <random>

#include "crnmss/model.hpp"
#include "crnmss/rational.hpp"

using namespace crnmss;

namespace {

Complex cx(std::vector<int> v) { return Complex(std::move(v)); }

}  // namespace

TEST(BuildNetwork, MinimalNetwork) {
  auto n = build_network({"A", "B"}, {{cx({1, 1}), cx({2, 0})}});
  EXPECT_EQ(n.complexes().size(), 2u);
  EXPECT_EQ(n.reactions().size(), 1u);
}

TEST(BuildNetwork, RejectsTrivialReaction) {
  try {
    build_network({"A"}, {{cx({1}), cx({1})}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TrivialReaction);
  }
}

TEST(BuildNetwork, RejectsDuplicateSpecies) {
  try {
    build_network({"A", "A"}, {{cx({1, 0}), cx({0, 1})}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateSpecies);
  }
}

TEST(BuildNetwork, RejectsOrphanSpecies) {
  try {
    build_network({"A", "B", "C"}, {{cx({1, 0, 0}), cx({0, 1, 0})}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrphanSpecies);
  }
}

TEST(BuildNetwork, RejectsEmptyNetwork) {
  try {
    build_network({}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyNetwork);
  }
}

TEST(BuildNetwork, RejectsLengthMismatch) {
  try {
    build_network({"A", "B"}, {{cx({1}), cx({0, 1})}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(BuildNetwork, SubnetworkExampleHasFourComplexes) {
  // A+C <-> B+C, A+D <-> 2E over A..E.
  const Complex ac = cx({1, 0, 1, 0, 0}), bc = cx({0, 1, 1, 0, 0});
  const Complex ad = cx({1, 0, 0, 1, 0}), e2 = cx({0, 0, 0, 0, 2});
  auto n = build_network({"A", "B", "C", "D", "E"}, {{ac, bc}, {bc, ac}, {ad, e2}, {e2, ad}});
  EXPECT_EQ(n.complexes().size(), 4u);
  EXPECT_EQ(n.reactions().size(), 4u);
  EXPECT_TRUE(n.all_reversible());
}

TEST(BuildNetwork, CanonicalOrderAndDedup) {
  auto n = build_network({"A", "B"}, {{cx({0, 1}), cx({1, 0})},
                                      {cx({1, 0}), cx({0, 1})},
                                      {cx({0, 1}), cx({1, 0})}});
  ASSERT_EQ(n.reactions().size(), 2u);
  EXPECT_LT(n.reactions()[0], n.reactions()[1]);
  EXPECT_TRUE(std::is_sorted(n.complexes().begin(), n.complexes().end()));
}

TEST(FullyOpenClosure, AddsFlows) {
  auto n = build_network({"A", "B"}, {{cx({1, 1}), cx({2, 0})}});
  auto f = fully_open_closure(n);
  EXPECT_EQ(f.reactions().size(), 5u);
  EXPECT_TRUE(is_fully_open(f));
  EXPECT_EQ(fully_open_closure(f), f);
  for (const auto& r : n.reactions()) EXPECT_TRUE(f.contains(r));
}

TEST(FullyOpenClosure, M2Core) {
  auto core = build_network({"A", "B"}, {{cx({2, 1}), cx({3, 0})}, {cx({3, 0}), cx({2, 1})}});
  auto m2 = fully_open_closure(core);
  EXPECT_EQ(m2.reactions().size(), 6u);
  ASSERT_EQ(m2.complexes().size(), 5u);
  // Canonical order: 0, B, A, 2A+B, 3A.
  EXPECT_EQ(m2.complexes()[0], cx({0, 0}));
  EXPECT_EQ(m2.complexes()[1], cx({0, 1}));
  EXPECT_EQ(m2.complexes()[2], cx({1, 0}));
  EXPECT_EQ(m2.complexes()[3], cx({2, 1}));
  EXPECT_EQ(m2.complexes()[4], cx({3, 0}));
}

TEST(ReactionVector, Examples) {
  EXPECT_EQ(reaction_vector({cx({1, 1}), cx({2, 0})}), (std::vector<int>{1, -1}));
  EXPECT_EQ(reaction_vector({cx({2, 1}), cx({3, 0})}), (std::vector<int>{1, -1}));
  EXPECT_EQ(reaction_vector({cx({0, 0}), cx({1, 0})}), (std::vector<int>{1, 0}));
}

TEST(FlowReaction, Classification) {
  EXPECT_TRUE(is_flow_reaction({cx({0, 0}), cx({0, 1})}));
  EXPECT_TRUE(is_flow_reaction({cx({1, 0}), cx({0, 0})}));
  EXPECT_FALSE(is_flow_reaction({cx({2, 0}), cx({0, 0})}));
  EXPECT_FALSE(is_flow_reaction({cx({1, 0}), cx({0, 1})}));
}

TEST(Format, ComplexAndReaction) {
  const std::vector<std::string> sp{"A", "B"};
  EXPECT_EQ(format_complex(cx({2, 1}), sp), "2 A + B");
  EXPECT_EQ(format_complex(cx({0, 0}), sp), "0");
  EXPECT_EQ(format_reaction({cx({2, 1}), cx({3, 0})}, sp), "2 A + B -> 3 A");
}

TEST(Rational, ParseForms) {
  EXPECT_EQ(*parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(*parse_rational("-4"), Rational(-4));
  EXPECT_EQ(*parse_rational("0.125"), make_rational(1, 8));
  EXPECT_EQ(*parse_rational("1e-2"), make_rational(1, 100));
  EXPECT_EQ(*parse_rational("2.5E1"), Rational(25));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("abc"));
  EXPECT_FALSE(parse_rational("1/2/3"));
  EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
}

TEST(Rational, PrimitiveInteger) {
  RationalVector v{make_rational(1, 2), make_rational(-3, 4), 0};
  EXPECT_EQ(primitive_integer(v), (RationalVector{2, -3, 0}));
}

// Properties over random small networks.
TEST(ModelProperties, ReverseNegatesAndClosureIdempotent) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coeff(0, 3), count(1, 4), species(1, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const int s = species(rng);
    std::vector<std::string> names;
    for (int i = 0; i < s; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
    std::vector<Reaction> rs;
    const int m = count(rng);
    for (int k = 0; k < m; ++k) {
      Complex a = zero_complex(s), b = zero_complex(s);
      for (int i = 0; i < s; ++i) {
        a.coeffs[i] = coeff(rng);
        b.coeffs[i] = coeff(rng);
      }
      if (a == b) continue;
      rs.push_back({a, b});
    }
    Network n;
    try {
      n = build_network(names, rs);
    } catch (const Error&) {
      continue;  // orphan species or empty; not a property failure
    }
    for (const auto& r : n.reactions()) {
      auto v = reaction_vector(r), w = reaction_vector(r.reversed());
      for (int i = 0; i < s; ++i) EXPECT_EQ(v[i], -w[i]);
    }
    auto f = fully_open_closure(n);
    EXPECT_EQ(fully_open_closure(f), f);
    for (const auto& r : n.reactions()) EXPECT_TRUE(f.contains(r));
    // Decompose and rebuild.
    EXPECT_EQ(build_network(n.species(), n.reactions()), n);
  }
}
