#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mordellh10/mordell.hpp"
#include "oracles.hpp"

using namespace mh10;
using namespace mh10::mordell;

TEST(Curve, RejectsZero) { EXPECT_THROW(MordellCurve(0), std::invalid_argument); }

TEST(Curve, CoreAndScale) {
  const MordellCurve c(Integer(-432) * 64);
  EXPECT_EQ(c.core(), -432);
  EXPECT_EQ(c.scale(), 2);
  EXPECT_EQ(c.discriminant(), Integer(-432) * c.a() * c.a());
}

TEST(Twists, Examples) {
  const auto [t1, t2] = cubic_twists(MordellCurve(1), 3);
  EXPECT_EQ(t1.a(), 9);
  EXPECT_EQ(t2.a(), 81);
  const auto [u1, u2] = cubic_twists(MordellCurve(6), 2);
  EXPECT_EQ(u1.a(), 24);
  EXPECT_EQ(u2.a(), 96);
  EXPECT_THROW(cubic_twists(MordellCurve(1), 8), std::invalid_argument);
  EXPECT_THROW(cubic_twists(MordellCurve(1), 1), std::invalid_argument);
}

TEST(Isogeny, Constants) {
  EXPECT_EQ(isogenous_constant(MordellCurve(1)).a(), -27);
  EXPECT_EQ(isogenous_constant(MordellCurve(2)).a(), -54);
  EXPECT_EQ(isogenous_constant(MordellCurve(-16)).a(), 432);
}

TEST(Traces, FrozenValues) {
  EXPECT_EQ(ap(MordellCurve(1), 5), 0);
  EXPECT_EQ(ap(MordellCurve(1), 7), -4);
  EXPECT_EQ(ap(MordellCurve(-27), 7), -4);
}

TEST(Traces, MatchPointCountOracle) {
  for (std::int64_t a : {1, 2, -3, 7, -432, 1000}) {
    for (const auto p : oracle::primes_upto(120)) {
      if (p <= 3 || a % p == 0) continue;
      EXPECT_EQ(ap(MordellCurve(a), p), oracle::trace(a, p)) << a << " " << p;
    }
  }
}

TEST(Traces, CmVanishingHasseAndIsogeny) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> dist(-100'000, 100'000);
  std::vector<std::int64_t> constants{1, 2, -432};
  while (constants.size() < 20) {
    const auto a = dist(rng);
    if (a != 0) constants.push_back(a);
  }
  const auto primes = arith::sieve_primes(10'000);
  for (const auto a : constants) {
    const MordellCurve e(a), iso = isogenous_constant(e);
    for (const auto p : primes) {
      if (p <= 3 || a % p == 0) continue;
      const auto t = ap_fast(e, p);
      if (p % 3 == 2) { EXPECT_EQ(t, 0) << a << " " << p; }
      EXPECT_LE(double(t) * t, 4.0 * p);
      if (p <= 1000) {
        EXPECT_EQ(t, ap(e, p)) << a << " " << p;
        EXPECT_EQ(t, ap(iso, p)) << a << " " << p;
      }
    }
  }
}

TEST(Traces, InvariantUnderSixthPowers) {
  for (const auto p : {7LL, 13LL, 19LL, 31LL}) {
    EXPECT_EQ(ap(MordellCurve(5 * 64), p), ap(MordellCurve(5), p));
  }
}

TEST(Conductor, FrozenValues) {
  EXPECT_EQ(conductor(MordellCurve(16)), 27);
  EXPECT_EQ(conductor(MordellCurve(1)), 36);
  EXPECT_EQ(conductor(MordellCurve(2)), 1728);
  EXPECT_EQ(conductor(MordellCurve(-432)), 27);
  EXPECT_EQ(conductor_capped(MordellCurve(2), 1000), std::nullopt);
  EXPECT_EQ(conductor_capped(MordellCurve(2), 1728), 1728);
}

TEST(Conductor, FunctionalEquationOracle) {
  // The theta relation holds for exactly one sign and only at the true conductor.
  for (std::int64_t a : {1, 2, -2, 3, 5, -11}) {
    const MordellCurve e(a);
    const double N = static_cast<double>(conductor(e));
    std::vector<std::pair<std::int64_t, std::int64_t>> bad;
    for (const auto& info : bad_primes(e)) bad.emplace_back(info.p, info.local_ap);
    const auto an = oracle::coefficients(a, 6000, bad);
    auto best = [&](double n) {
      return std::min(oracle::theta_residual(an, n, 1, 1.1), oracle::theta_residual(an, n, -1, 1.1));
    };
    EXPECT_LT(best(N), 1e-9) << a;
    EXPECT_GT(best(N * 2), 1e-3) << a;
    EXPECT_GT(best(N / 3), 1e-3) << a;
  }
}

TEST(Period, MatchesBetaOracle) {
  EXPECT_NEAR(real_period(MordellCurve(1)), 4.20654631, 1e-8);
  for (std::int64_t a : {1, 2, -1, -2, 17, -432, 1000, -99999}) {
    EXPECT_NEAR(real_period_raw(Integer(a)), oracle::omega(double(a)), 1e-9 * oracle::omega(double(a))) << a;
  }
}

TEST(Period, ScalingLaw) {
  for (std::int64_t a : {3, -7}) {
    const double base = real_period_raw(Integer(a));
    EXPECT_NEAR(real_period_raw(Integer(a) * 64), base / 2, 1e-10);
    EXPECT_NEAR(real_period_raw(Integer(a) * 729), base / 3, 1e-10);
  }
  EXPECT_NEAR(real_period(MordellCurve(3 * 64)), real_period_raw(Integer(3)), 1e-12);
}

TEST(PointSearch, FrozenValues) {
  const auto p2 = point_search(MordellCurve(2), 10'000);
  ASSERT_TRUE(p2);
  EXPECT_EQ(p2->x(), -1);
  EXPECT_EQ(p2->y(), 1);
  const auto p9 = point_search(MordellCurve(9), 10'000);
  ASSERT_TRUE(p9);
  EXPECT_EQ(p9->x(), -2);
  EXPECT_EQ(p9->y(), 1);
  const auto p3456 = point_search(MordellCurve(-3456), 10'000);
  ASSERT_TRUE(p3456);
  EXPECT_EQ(p3456->x(), 28);
  EXPECT_EQ(p3456->y(), 136);
  EXPECT_FALSE(point_search(MordellCurve(1), 10'000));
  EXPECT_FALSE(point_search(MordellCurve(-432), 10'000));
}

TEST(PointSearch, PointsLieOnCurveAndAreNotTorsion) {
  for (std::int64_t a = -60; a <= 60; ++a) {
    if (a == 0) continue;
    const MordellCurve e(a);
    const auto pt = point_search(e, 2000);
    if (!pt) continue;
    EXPECT_TRUE(pt->lies_on(e)) << a;
    EXPECT_GT(pt->n, 0);
    oracle::Point q{false, pt->x(), pt->y()};
    EXPECT_EQ(oracle::order(q, oracle::Rat(a)), 0) << a;
  }
}

TEST(PointText, RoundTrip) {
  const auto pt = RationalPoint::from_affine(Rational(134977, 36), Rational(-49743647, 216));
  EXPECT_EQ(pt.e, 6);
  EXPECT_TRUE(pt.lies_on(MordellCurve(Integer(6) * 86 * 86 * 86 * 86)));
}

TEST(Torsion, MatchesNagellLutzOracle) {
  for (std::int64_t a = -500; a <= 500; ++a) {
    if (a == 0) continue;
    const TorsionClass t = torsion(MordellCurve(a));
    const auto expected = oracle::torsion_points(a);
    ASSERT_EQ(t.points.size(), expected.size()) << a;
    EXPECT_EQ(t.order, static_cast<int>(expected.size()) + 1) << a;
    for (const auto& q : expected) {
      EXPECT_TRUE(t.contains(RationalPoint::from_affine(q.x, q.y))) << a;
    }
    if (t.order > 1) {
      ASSERT_TRUE(t.generator);
      oracle::Point g{false, t.generator->x(), t.generator->y()};
      EXPECT_EQ(oracle::order(g, oracle::Rat(a)), t.order) << a;
    }
  }
}

TEST(Torsion, KnownGroups) {
  EXPECT_EQ(torsion(MordellCurve(1)).order, 6);
  EXPECT_EQ(torsion(MordellCurve(-432)).order, 3);
  EXPECT_EQ(torsion(MordellCurve(8)).order, 2);
  EXPECT_EQ(torsion(MordellCurve(4)).order, 3);
  EXPECT_EQ(torsion(MordellCurve(2)).order, 1);
  EXPECT_EQ(torsion(MordellCurve(64)).order, 6);
}

TEST(LocalData, BadPrimesOfCore) {
  const auto bad = bad_primes(MordellCurve(Integer(5) * 64 * 7));
  std::vector<std::int64_t> ps;
  for (const auto& b : bad) ps.push_back(b.p);
  EXPECT_EQ(ps, (std::vector<std::int64_t>{2, 3, 5, 7}));
  EXPECT_EQ(local_info(MordellCurve(35), 11).conductor_exponent, 0);
  EXPECT_EQ(local_info(MordellCurve(35), 7).conductor_exponent, 2);
}
