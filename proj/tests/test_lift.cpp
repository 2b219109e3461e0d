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

const LaurentPoly kHopf = LaurentPoly::parse("-A^4 - A^-4");

bool unit_monomial(const LaurentPoly& f) { return f.is_unit(); }

}  // namespace

TEST(Lift, Shape) {
  const auto l = build_lift(load("l_a.ann"), LensContext(4, 1));
  EXPECT_EQ(l.word.closure(), Closure::Planar);
  EXPECT_EQ(l.word.t(), 2);
  EventList expected = repeat({Event::crossing(1, Sign::Negative)}, 4);
  expected.push_back(Event::crossing(1, Sign::Positive));
  expected.push_back(Event::crossing(1, Sign::Positive));
  EXPECT_EQ(l.word.events(), expected);
  EXPECT_EQ(l.source, load("l_a.ann"));
  EXPECT_EQ(l.context, LensContext(4, 1));
}

TEST(Lift, CrossingCount) {
  std::mt19937 rng(50);
  const auto params = oracle::lens_parameters(1, 7);
  for (int i = 0; i < 200; ++i) {
    const auto [p, q] = params[static_cast<std::size_t>(i) % params.size()];
    const auto b = oracle::random_word(rng, i % 5, i % 7, i % 2);
    const auto l = build_lift(b, LensContext(p, q));
    const auto t = static_cast<std::size_t>(b.t());
    ASSERT_EQ(l.word.crossing_count(), static_cast<std::size_t>(p) * b.crossing_count() +
                                           static_cast<std::size_t>(2 * q) * t * (t > 0 ? t - 1 : 0) / 2);
    ASSERT_EQ(l.word.widths().back(), b.t());
  }
}

TEST(Lift, Errors) {
  EXPECT_THROW(build_lift(AnnularWord(1, {}, Closure::Planar), LensContext(3, 1)), std::invalid_argument);
  EXPECT_THROW(build_lift(AnnularWord(0, {}), LensContext(3, 1)), std::invalid_argument);
}

TEST(Lift, CoreLiftsToUnknot) {
  for (auto [p, q] : oracle::lens_parameters(1, 9)) EXPECT_EQ(bracket_of_lift(AnnularWord(1, {}), LensContext(p, q)), LaurentPoly(1));
}

TEST(Lift, HopfLinks) {
  const LensContext ctx(4, 1);
  for (const char* name : {"l_a.ann", "l_b.ann"}) {
    const auto lift = build_lift(load(name), ctx);
    const auto raw = bracket_of_lift(load(name), ctx);
    EXPECT_EQ(raw, oracle::brute_force_bracket(lift.word)) << name;
    const auto k = framing_ratio(raw, kHopf);
    ASSERT_TRUE(k.has_value()) << name << ": " << raw.to_string();
    EXPECT_EQ(*k, 0) << name;
  }
}

TEST(Lift, KnotsLiftToUnknots) {
  for (int q : {2, 3}) {
    const LensContext ctx(5, q);
    for (const char* name : {"k1.ann", "k2.ann"}) {
      const auto lift = build_lift(load(name), ctx);
      const auto raw = bracket_s3(lift.word);
      EXPECT_TRUE(unit_monomial(raw)) << name << " q=" << q << ": " << raw.to_string();
      EXPECT_EQ(raw, oracle::brute_force_bracket(lift.word));
      // the monomial is the framing of the diagram
      EXPECT_EQ(writhe_normalized(raw, writhe(lift.word)), LaurentPoly(1)) << name << " q=" << q;
    }
  }
}

TEST(Lift, EquivalentLiftsDifferentValues) {
  const LensContext l41(4, 1);
  EXPECT_TRUE(framing_ratio(bracket_of_lift(load("l_a.ann"), l41), bracket_of_lift(load("l_b.ann"), l41)));
  EXPECT_NE(kbsm_lens(load("l_a.ann"), l41), kbsm_lens(load("l_b.ann"), l41));
  for (int q : {2, 3}) {
    const LensContext ctx(5, q);
    EXPECT_TRUE(framing_ratio(bracket_of_lift(load("k1.ann"), ctx), bracket_of_lift(load("k2.ann"), ctx)));
    EXPECT_NE(kbsm_lens(load("k1.ann"), ctx), kbsm_lens(load("k2.ann"), ctx));
  }
}

TEST(Lift, ThreeSphereIsIdentity) {
  std::mt19937 rng(51);
  const LensContext s3(1, 0);
  for (int i = 0; i < 100; ++i) {
    const auto b = oracle::random_word(rng, i % 5, i % 8, i % 2);
    ASSERT_EQ(bracket_of_lift(b, s3), bracket_s3(b.with_closure(Closure::Planar)));
  }
}

TEST(Lift, AgreesWithBruteForce) {
  std::mt19937 rng(52);
  const auto params = oracle::lens_parameters(2, 4);
  for (int i = 0; i < 40; ++i) {
    const auto [p, q] = params[static_cast<std::size_t>(i) % params.size()];
    const auto b = oracle::random_word(rng, 1 + i % 3, i % 3, i % 2);
    const auto lift = build_lift(b, LensContext(p, q));
    if (lift.word.crossing_count() > 14) continue;
    ASSERT_EQ(bracket_s3(lift.word), oracle::brute_force_bracket(lift.word)) << serialize(b);
  }
}

TEST(Lift, FileRoundTrip) {
  const auto l = build_lift(load("l_b.ann"), LensContext(4, 1));
  const auto back = std::get<AnnularWord>(parse_diagram(serialize(l.word)));
  EXPECT_EQ(back, l.word);
  EXPECT_EQ(bracket_s3(back), kHopf);
}

TEST(FramingRatio, Cases) {
  EXPECT_EQ(framing_ratio(LaurentPoly::parse("-A^3"), LaurentPoly(1)), 1);
  EXPECT_EQ(framing_ratio(LaurentPoly::parse("A^-6") * kHopf, kHopf), -2);
  EXPECT_FALSE(framing_ratio(LaurentPoly::parse("A^3"), LaurentPoly(1)));
  EXPECT_FALSE(framing_ratio(LaurentPoly::parse("A"), LaurentPoly(1)));
  EXPECT_FALSE(framing_ratio(LaurentPoly(), LaurentPoly(1)));
}
