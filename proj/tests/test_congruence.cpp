#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "oracle.hpp"

using namespace kbsm;

namespace {

AnnularWord load(const std::string& name) {
  std::ifstream in(std::string(KBSM_SOURCE_DIR) + "/diagrams/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return std::get<AnnularWord>(parse_diagram(ss.str()));
}

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

// f in (4, A^2 + 1 + A^-2) iff A^k f reduces to 0 modulo 4 and the monic
// A^4 + A^2 + 1.
bool in_four_one_ideal(const LaurentPoly& f) {
  if (f.is_zero()) return true;
  std::map<int, long> c;
  const int shift = -f.min_exponent();
  for (const auto& [e, v] : f.terms()) c[e + shift] = mpz_class(v % 4).get_si();
  for (int d = c.empty() ? -1 : c.rbegin()->first; d >= 4; --d) {
    const long lead = ((c[d] % 4) + 4) % 4;
    if (lead == 0) continue;
    c[d] -= lead;
    c[d - 2] -= lead;
    c[d - 4] -= lead;
  }
  for (const auto& [e, v] : c)
    if (v % 4 != 0) return false;
  return true;
}

const IdealBasis& four_one() { return cached_ideal(LensContext(4, 1), 2); }

}  // namespace

TEST(Bivar, Conversion) {
  const auto f = BivarIntPoly::from_laurent(P("A^2 + 1 + A^-2"));
  EXPECT_EQ(f.to_string(), "a^2 + b^2 + 1");
  EXPECT_EQ(f.to_laurent(), P("A^2 + 1 + A^-2"));
  EXPECT_EQ(BivarIntPoly::unit_relation().to_laurent(), LaurentPoly());
  EXPECT_EQ(BivarIntPoly(Coeff(4)).to_string(), "4");
}

TEST(Ideal, FourOneGenerators) {
  const auto& I = four_one();
  ASSERT_EQ(I.generators.size(), 3u);
  EXPECT_EQ(I.generators[0], LaurentPoly(4));
  EXPECT_EQ(I.generators[1], P("-A^6 + A^2 - 1 + A^-2 - A^-6"));
  EXPECT_EQ(I.generators[2], P("A^8 + 5*A^4 + 6 + 5*A^-4 + A^-8"));
  EXPECT_EQ(I.generators[2], delta_pow(4) - P("-A^4 - A^-4"));
}

TEST(Ideal, FourOneBasis) {
  const auto& I = four_one();
  EXPECT_EQ(I.laurent_basis(), (std::vector<LaurentPoly>{LaurentPoly(4), P("A^2 + 1 + A^-2")}));
  EXPECT_EQ(I.basis_string(), "{4, A^2 + 1 + A^-2}");
  EXPECT_EQ(I.order, "deglex(a>b)");
  // the polynomial basis carries the unit relation in reduced form
  std::vector<std::string> text;
  for (const auto& g : I.groebner) text.push_back(g.to_string());
  EXPECT_EQ(text, (std::vector<std::string>{"4", "a*b + 3", "a^2 + b^2 + 1", "b^3 + a + b"}));
}

TEST(Ideal, SmallCases) {
  const auto I = build_ideal(LensContext(2, 1), 1);
  EXPECT_EQ(I.generators, (std::vector<LaurentPoly>{LaurentPoly(2), delta() - LaurentPoly(1)}));
  const auto S = build_ideal(LensContext(1, 0), 3);
  EXPECT_TRUE(member(LaurentPoly(1), S));
  EXPECT_TRUE(member(P("17*A^5 - A^-3"), S));
}

TEST(Groebner, Trivial) {
  const auto one = groebner(std::vector<LaurentPoly>{LaurentPoly(1)});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].to_string(), "1");
  IdealBasis I{{LaurentPoly(6), LaurentPoly(4)}, groebner(std::vector<LaurentPoly>{LaurentPoly(6), LaurentPoly(4)})};
  EXPECT_EQ(I.laurent_basis(), std::vector<LaurentPoly>{LaurentPoly(2)});
  EXPECT_EQ(I.groebner.front().to_string(), "2");
}

TEST(Groebner, Idempotent) {
  for (auto [p, q] : oracle::lens_parameters(2, 5))
    for (int t = 1; t <= 4; ++t) {
      const auto& I = cached_ideal(LensContext(p, q), t);
      EXPECT_EQ(groebner(I.groebner), I.groebner) << p << "," << q << " t=" << t;
    }
}

TEST(Groebner, GeneratorsReduceToZero) {
  for (auto [p, q] : oracle::lens_parameters(2, 5))
    for (int t = 1; t <= 4; ++t) {
      const auto& I = cached_ideal(LensContext(p, q), t);
      for (const auto& g : I.generators) EXPECT_TRUE(member(g, I)) << g.to_string();
      for (const auto& g : I.laurent_basis()) EXPECT_TRUE(member(g, I)) << g.to_string();
    }
}

TEST(Member, Examples) {
  const auto& I = four_one();
  EXPECT_TRUE(member(LaurentPoly(4), I));
  EXPECT_FALSE(member(LaurentPoly(1), I));
  EXPECT_FALSE(member(LaurentPoly(2), I));
  EXPECT_TRUE(member(P("A^-12") - P("-A^4 - A^-4"), I));
  EXPECT_TRUE(member(P("A^12") - P("-A^4 - A^-4"), I));
  EXPECT_TRUE(member(P("A^6 - 1"), I));
  EXPECT_FALSE(member(P("A^2 - 1"), I));
}

TEST(Member, AgreesWithQuotientRing) {
  std::mt19937 rng(60);
  const auto& I = four_one();
  const LaurentPoly g = P("A^2 + 1 + A^-2");
  int inside = 0;
  for (int i = 0; i < 500; ++i) {
    LaurentPoly f = oracle::random_poly(rng, 1 + i % 6, 10, 9);
    // half of the samples are built to lie in the ideal
    if (i % 2) f = oracle::random_poly(rng, 3, 6, 9) * g + LaurentPoly(4) * oracle::random_poly(rng, 3, 6, 9);
    const bool expected = in_four_one_ideal(f);
    ASSERT_EQ(member(f, I), expected) << f.to_string();
    inside += expected;
  }
  EXPECT_GT(inside, 200);
}

TEST(Member, CombinationsOfGenerators) {
  std::mt19937 rng(61);
  for (auto [p, q] : oracle::lens_parameters(2, 5)) {
    const auto& I = cached_ideal(LensContext(p, q), 3);
    for (int i = 0; i < 10; ++i) {
      LaurentPoly f;
      for (const auto& g : I.generators) f += oracle::random_poly(rng, 2, 5, 20) * g;
      ASSERT_TRUE(member(f, I)) << f.to_string();
    }
  }
}

TEST(Member, UnitInvariant) {
  std::mt19937 rng(62);
  for (auto [p, q] : oracle::lens_parameters(2, 5)) {
    const auto& I = cached_ideal(LensContext(p, q), 2);
    for (int i = 0; i < 20; ++i) {
      const auto f = oracle::random_poly(rng, 4, 8, 6);
      const bool m = member(f, I);
      for (int k : {-7, -1, 1, 4})
        ASSERT_EQ(member(LaurentPoly::monomial(k % 2 ? -1 : 1, k) * f, I), m) << f.to_string();
    }
  }
}

TEST(Verify, Examples) {
  const LensContext ctx(4, 1);
  const auto a = verify(load("l_a.ann"), ctx);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.lhs, P("A^12"));
  EXPECT_EQ(a.lhs, pow(P("-A^3"), 4));
  EXPECT_EQ(a.rhs, P("-A^4 - A^-4"));
  const auto b = verify(load("l_b.ann"), ctx);
  EXPECT_TRUE(b.holds);
  EXPECT_EQ(b.lhs, P("A^8 + 4*A^4 + 6 + 4*A^-4 + A^-8"));
  EXPECT_EQ(b.rhs, P("-A^4 - A^-4"));
  EXPECT_EQ(b.difference, b.lhs - b.rhs);
  EXPECT_EQ(b.to_string(),
            "lhs: A^8 + 4*A^4 + 6 + 4*A^-4 + A^-8\nrhs: -A^4 - A^-4\ndifference: A^8 + 5*A^4 + 6 + 5*A^-4 + A^-8\n"
            "groebner: {4, A^2 + 1 + A^-2}\ncongruent: yes\n");
  for (auto [p, q] : oracle::lens_parameters(1, 6)) {
    const auto r = verify(AnnularWord(1, {}), LensContext(p, q));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.lhs, LaurentPoly(1));
    EXPECT_EQ(r.rhs, LaurentPoly(1));
  }
}

TEST(Verify, DetectsWrongRightHandSide) {
  const LensContext ctx(3, 1);
  const auto& I = cached_ideal(ctx, 2);
  const auto b = load("l_a.ann");
  const auto lhs = pow(bracket_s3(b), 3);
  EXPECT_TRUE(member(lhs - bracket_of_lift(b, ctx), I));
  EXPECT_FALSE(member(lhs - bracket_of_lift(b, ctx) - LaurentPoly(1), I));
}

TEST(Verify, CongruenceOnRandomWordsAwayFromFive) {
  std::mt19937 rng(63);
  const auto params = oracle::lens_parameters(2, 6);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    const auto [p, q] = params[rng() % params.size()];
    const auto b = oracle::random_word(rng, 1 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 7), i % 2);
    if (b.crossing_count() > 6 || p == 5) continue;
    ASSERT_TRUE(verify(b, LensContext(p, q)).holds) << p << "," << q << "\n" << serialize(b);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

// For odd p >= 5 the generators do not force A^{6q} = 1, which the
// congruence needs as soon as a state turns back through the twist: K2 of
// L(5,2) lifts to an unknot with one kink, -A^3, against (-A^3)^5.
TEST(Verify, OddPrimeCounterexample) {
  const LensContext ctx(5, 2);
  const auto r = verify(load("k2.ann"), ctx);
  EXPECT_EQ(r.lhs, P("-A^15"));
  EXPECT_EQ(r.rhs, P("-A^3"));
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(member(P("A^12 - 1"), cached_ideal(ctx, 2)));
}

TEST(Verify, OddPrimeHoldsWithSixQRelation) {
  std::mt19937 rng(64);
  for (int i = 0; i < 40; ++i) {
    const int q = 1 + static_cast<int>(rng() % 4);
    const LensContext ctx(5, q);
    const auto b = oracle::random_word(rng, 1 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 7), i % 2);
    if (b.crossing_count() > 6) continue;
    auto gens = build_ideal(ctx, b.t()).generators;
    gens.push_back(LaurentPoly::A(6 * q) - LaurentPoly(1));
    const IdealBasis J{gens, groebner(gens)};
    ASSERT_TRUE(member(verify(b, ctx).difference, J)) << q << "\n" << serialize(b);
  }
}
