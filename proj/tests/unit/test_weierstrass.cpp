#include <gtest/gtest.h>

#include "mordellh10/weierstrass.hpp"
#include "oracles.hpp"

using namespace mh10;
using namespace mh10::weierstrass;

namespace {
Model mordell_model(std::int64_t a) { return {0, 0, 0, 0, a}; }
}  // namespace

TEST(Model, Invariants) {
  const Model m = mordell_model(7);
  EXPECT_EQ(m.b2(), 0);
  EXPECT_EQ(m.b6(), 28);
  EXPECT_EQ(m.c4(), 0);
  EXPECT_EQ(m.c6(), -216 * 28);
  EXPECT_EQ(m.discriminant(), -432 * 49);
}

TEST(Model, TransformPreservesDiscriminant) {
  const Model m{1, -1, 1, 3, -5};
  const Model t = m.rst_transform(2, -1, 3);
  EXPECT_EQ(t.discriminant(), m.discriminant());
  EXPECT_EQ(t.rst_transform(0, 0, 0), t);
}

TEST(Tate, SixteenIsGoodAtTwo) {
  const LocalData d = tate(mordell_model(16), 2);
  EXPECT_TRUE(d.good());
  EXPECT_EQ(d.disc_valuation, 0);
  EXPECT_EQ(d.local_ap, 0);
  const LocalData d3 = tate(mordell_model(16), 3);
  EXPECT_EQ(d3.conductor_exponent, 3);
}

TEST(Tate, ConductorExponentsOfSmallCurves) {
  // y^2 = x^3 + 1 has conductor 36, y^2 = x^3 + 2 has conductor 1728.
  EXPECT_EQ(tate(mordell_model(1), 2).conductor_exponent, 2);
  EXPECT_EQ(tate(mordell_model(1), 3).conductor_exponent, 2);
  EXPECT_EQ(tate(mordell_model(2), 2).conductor_exponent, 6);
  EXPECT_EQ(tate(mordell_model(2), 3).conductor_exponent, 3);
  EXPECT_EQ(tate(mordell_model(-432), 2).conductor_exponent, 0);
  EXPECT_EQ(tate(mordell_model(-432), 3).conductor_exponent, 3);
}

TEST(Tate, GoodPrimeTraceMatchesOracle) {
  for (std::int64_t a : {1, 2, -7, 13}) {
    for (std::int64_t p : {5, 7, 11, 13, 31}) {
      if (a % p == 0) continue;
      const LocalData d = tate(mordell_model(a), p);
      EXPECT_TRUE(d.good());
      EXPECT_EQ(d.local_ap, oracle::trace(a, p)) << a << " " << p;
    }
  }
}

TEST(Tate, AdditiveAtLargePrime) {
  const LocalData d = tate(mordell_model(5), 5);
  EXPECT_EQ(d.conductor_exponent, 2);
  EXPECT_EQ(d.kodaira, Kodaira::II);
  EXPECT_EQ(d.local_ap, 0);
}

TEST(CountPoints, MatchesOracle) {
  for (std::int64_t a : {1, 3, -5, 17}) {
    for (std::int64_t p : {5, 7, 13, 19}) {
      EXPECT_EQ(count_affine_points(mordell_model(a), p) + 1, oracle::count_points(a, p));
    }
  }
}

TEST(Kodaira, Names) {
  EXPECT_EQ(to_string(Kodaira::I0Star), "I0*");
  EXPECT_EQ(to_string(Kodaira::IIStar), "II*");
}
