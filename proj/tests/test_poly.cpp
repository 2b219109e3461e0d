#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace kbsm;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

const mpq_class kPoints[] = {mpq_class(2), mpq_class(-3), mpq_class(1, 2), mpq_class(-5, 7)};

}  // namespace

TEST(Poly, AddExamples) {
  EXPECT_EQ(LaurentPoly::A(1) + LaurentPoly::A(-1), P("A + A^-1"));
  EXPECT_EQ(P("A^2 + 1") + LaurentPoly(), P("A^2 + 1"));
  EXPECT_TRUE((P("A^2 + 1") + P("-A^2 - 1")).is_zero());
  EXPECT_TRUE((P("A^2 + 1") + P("-A^2 - 1")).terms().empty());
}

TEST(Poly, MulExamples) {
  EXPECT_EQ(P("-A^-2 - A^2") * P("-A^-2 - A^2"), P("A^4 + 2 + A^-4"));
  EXPECT_EQ(P("3*A^5 - A") * LaurentPoly(1), P("3*A^5 - A"));
  EXPECT_EQ(pow(delta(), 4), P("A^8 + 4*A^4 + 6 + 4*A^-4 + A^-8"));
}

TEST(Poly, PowExamples) {
  EXPECT_EQ(pow(P("-A^-3"), 4), P("A^-12"));
  EXPECT_EQ(pow(P("2*A - 7"), 1), P("2*A - 7"));
  EXPECT_EQ(pow(P("2*A - 7"), 0), LaurentPoly(1));
  // (-A^2 - A^-2)^3 expanded by the binomial theorem
  EXPECT_EQ(pow(delta(), 3), P("-A^6 - 3*A^2 - 3*A^-2 - A^-6"));
}

TEST(Poly, Delta) {
  EXPECT_EQ(delta(), P("-A^2 - A^-2"));
  EXPECT_EQ(delta().to_string(), "-A^2 - A^-2");
  EXPECT_EQ(delta() * delta(), P("A^4 + 2 + A^-4"));
  EXPECT_EQ(delta_pow(5), pow(delta(), 5));
}

TEST(Poly, DeltaCubedMinusOneModFour) {
  // printed with coefficients reduced mod 4: -3 == 1
  const LaurentPoly exact = pow(delta(), 3) - LaurentPoly(1);
  const LaurentPoly printed = P("-A^6 + A^2 - 1 + A^-2 - A^-6");
  const LaurentPoly diff = exact - printed;
  for (const auto& [e, c] : diff.terms()) EXPECT_EQ(c % 4, 0) << e;
}

TEST(Poly, TextFormat) {
  EXPECT_EQ(P("-A^4 - A^-4").to_string(), "-A^4 - A^-4");
  EXPECT_EQ(P("A").to_string(), "A");
  EXPECT_EQ(P("-1").to_string(), "-1");
  EXPECT_EQ(LaurentPoly().to_string(), "0");
  EXPECT_EQ(P("12*A^-3 + A^3 - 2").to_string(), "A^3 - 2 + 12*A^-3");
  EXPECT_EQ(P("A^2 + A^2").to_string(), "2*A^2");
  EXPECT_THROW(P("A^"), ParseError);
  EXPECT_THROW(P("3*"), ParseError);
  EXPECT_THROW(P("B^2"), ParseError);
}

TEST(Poly, BigCoefficientsStayExact) {
  LaurentPoly f = P("1000000007*A + 999999937");
  const LaurentPoly g = pow(f, 6);
  for (const auto& x : kPoints) {
    const mpq_class v = oracle::eval(f, x);
    mpq_class r = 1;
    for (int i = 0; i < 6; ++i) r *= v;
    EXPECT_EQ(oracle::eval(g, x), r);
  }
  EXPECT_EQ(LaurentPoly::parse(g.to_string()), g);
}

TEST(PolyProperty, RingAxiomsAgainstEvaluation) {
  std::mt19937 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto f = oracle::random_poly(rng), g = oracle::random_poly(rng), h = oracle::random_poly(rng);
    ASSERT_EQ((f + g) + h, f + (g + h));
    ASSERT_EQ((f * g) * h, f * (g * h));
    ASSERT_EQ(f * g, g * f);
    ASSERT_EQ(f + g, g + f);
    ASSERT_EQ(f * (g + h), f * g + f * h);
    ASSERT_TRUE((f - f).is_zero());
    if (i % 10 == 0) {
      for (const auto& x : kPoints) {
        ASSERT_EQ(oracle::eval(f * g, x), oracle::eval(f, x) * oracle::eval(g, x));
        ASSERT_EQ(oracle::eval(f - h, x), oracle::eval(f, x) - oracle::eval(h, x));
      }
    }
  }
}

TEST(PolyProperty, CanonicalFormSurvivesText) {
  std::mt19937 rng(2);
  for (int i = 0; i < 500; ++i) {
    const auto f = oracle::random_poly(rng, 1 + i % 7);
    const auto g = LaurentPoly::parse(f.to_string());
    ASSERT_EQ(g.terms(), f.terms());
    for (const auto& [e, c] : g.terms()) ASSERT_NE(c, 0);
  }
}

TEST(PolyProperty, PowersAdd) {
  std::mt19937 rng(3);
  for (int i = 0; i < 60; ++i) {
    const auto f = oracle::random_poly(rng, 3, 4, 5);
    const unsigned m = static_cast<unsigned>(i % 9), n = static_cast<unsigned>((i * 7) % 9);
    ASSERT_EQ(pow(f, m) * pow(f, n), pow(f, m + n));
  }
}

TEST(Poly, MirrorAndUnits) {
  EXPECT_EQ(P("A^3 - 2*A^-1").mirrored(), P("A^-3 - 2*A"));
  EXPECT_TRUE(P("-A^7").is_unit());
  EXPECT_FALSE(P("2*A^7").is_unit());
  EXPECT_FALSE(P("A + 1").is_unit());
  EXPECT_EQ(P("-A^7").unit_inverse() * P("-A^7"), LaurentPoly(1));
  EXPECT_EQ(framing_factor(1), P("-A^3"));
  EXPECT_EQ(framing_factor(-2), P("A^-6"));
}

TEST(Poly, DivideExact) {
  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto f = oracle::random_poly(rng, 4, 6, 50);
    auto g = oracle::random_poly(rng, 3, 6, 50);
    if (g.is_zero()) continue;
    const auto q = divide_exact(f * g, g);
    ASSERT_TRUE(q.has_value());
    ASSERT_EQ(*q, f);
  }
  EXPECT_FALSE(divide_exact(P("A^2 + 1"), P("A + 1")).has_value());
  EXPECT_FALSE(divide_exact(P("3"), P("2")).has_value());
  EXPECT_EQ(*divide_exact(P("A^4 - A^-4"), P("A^2 - A^-2")), P("A^2 + A^-2"));
}
