#include <gtest/gtest.h>

#include <cmath>

#include "mordellh10/h10.hpp"

using namespace mh10;
using namespace mh10::h10;

namespace {
bool has_rule(const H10Certificate& cert, const std::string& rule) {
  for (const auto& link : cert.chain) {
    if (link.rule == rule) return true;
  }
  return false;
}
}  // namespace

TEST(Lemma1, IssuesForKnownPairs) {
  for (auto [a, D] : {std::pair<std::int64_t, std::int64_t>{1, 5}, {2, 17}}) {
    const auto out = lemma1_check(Integer(a), D);
    ASSERT_TRUE(out.certificate) << a << " " << D;
    EXPECT_TRUE(out.certificate->issued);
    EXPECT_TRUE(out.triple.exactly_one_positive());
    EXPECT_EQ(out.certificate->chain.back().rule, "shlapentokh-transfer");
    EXPECT_TRUE(has_rule(*out.certificate, "cm-rank-doubling"));
    EXPECT_TRUE(has_rule(*out.certificate, "cubic-twist-rank-sum"));
  }
}

TEST(Lemma1, RejectsBadInput) {
  EXPECT_THROW(lemma1_check(Integer(1), 8), std::invalid_argument);
  EXPECT_THROW(lemma1_check(Integer(1), 1), std::invalid_argument);
  EXPECT_THROW(lemma1_check(Integer(0), 5), std::invalid_argument);
}

TEST(Lemma1, AllZeroIsNegative) {
  // E_1, E_4, E_16 all have rank 0.
  const auto out = lemma1_check(Integer(1), 2);
  EXPECT_EQ(out.triple.positive_count(), 0);
  EXPECT_TRUE(out.decided_negative());
}

TEST(Degree6, PrimeClasses) {
  for (std::int64_t p : {5, 7, 11, 13, 17, 23, 43, 53}) {
    const auto out = certify_prime_degree6(p);
    ASSERT_TRUE(out.certificate) << p;
    EXPECT_TRUE(out.certificate->issued);
    EXPECT_EQ(out.certificate->field.D, p);
  }
  EXPECT_TRUE(has_rule(*certify_prime_degree6(5).certificate, "prime-class-2-5"));
  EXPECT_TRUE(has_rule(*certify_prime_degree6(7).certificate, "prime-class-4-7"));
  EXPECT_TRUE(has_rule(*certify_prime_degree6(17).certificate, "prime-class-8-sieve"));
}

TEST(Degree6, ClassOneIsNoDecision) {
  for (std::int64_t p : {19, 37, 73}) {
    const auto out = certify_prime_degree6(p);
    EXPECT_FALSE(out.certificate);
    ASSERT_TRUE(out.no_decision);
    EXPECT_FALSE(out.no_decision->reason.empty());
  }
  EXPECT_THROW(certify_prime_degree6(2), std::invalid_argument);
  EXPECT_THROW(certify_prime_degree6(3), std::invalid_argument);
  EXPECT_THROW(certify_prime_degree6(25), std::invalid_argument);
}

TEST(Json, ExactKeys) {
  const auto j = to_json(*certify_prime_degree6(5).certificate);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"chain", "field", "issued", "version"}));
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["field"]["type"], "degree6");
  EXPECT_EQ(j["field"]["D"], 5);
  EXPECT_TRUE(j["field"]["p"].is_null());
  EXPECT_EQ(j["field"].size(), 3u);
  for (const auto& link : j["chain"]) {
    EXPECT_EQ(link.size(), 3u);
    EXPECT_TRUE(link["claim"].is_string());
    EXPECT_TRUE(link["rule"].is_string());
    EXPECT_TRUE(link.contains("data"));
  }
}

TEST(Sieve, FirstMembers) {
  EXPECT_EQ(enumerate_S_sieve(100), (std::vector<std::int64_t>{7, 13, 31, 43, 79, 97}));
  for (const auto l : enumerate_S_sieve(5000)) {
    EXPECT_TRUE(l % 9 == 4 || l % 9 == 7);
    EXPECT_FALSE(arith::cubic_residue_test(3, l));
  }
}

TEST(Density, PredictionMonotoneToFiveSixths) {
  double prev = 0;
  for (int k = 1; k <= 30; ++k) {
    const double d = predicted_density(k);
    EXPECT_GT(d, prev);
    EXPECT_LT(d, 5.0 / 6);
    prev = d;
  }
  EXPECT_NEAR(predicted_density(30), 5.0 / 6, 1e-12);
}

TEST(Density, SmallExperiment) {
  const auto rep = density_experiment(5000, 3);
  EXPECT_EQ(rep.sieve, (std::vector<std::int64_t>{7, 13, 31}));
  EXPECT_EQ(rep.classes.at(1).certified, 0);
  EXPECT_EQ(rep.classes.at(2).certified, rep.classes.at(2).primes);
  EXPECT_NEAR(rep.class8_predicted, 1 - std::pow(3.0, -3), 1e-12);
  EXPECT_GE(rep.class8_fraction, rep.class8_predicted - 0.05);
  std::int64_t total = 0;
  for (const auto& [r, c] : rep.classes) total += c.primes;
  EXPECT_EQ(total, rep.primes);
  EXPECT_THROW(density_experiment(10, 3), std::invalid_argument);
  EXPECT_THROW(density_experiment(5000, 0), std::invalid_argument);
}

TEST(Scan, SmallLimit) {
  const auto rep = scan_S_prop44(10);
  EXPECT_EQ(rep.members, (std::vector<std::int64_t>{-6, -5, -2, 2, 5, 6}));
  EXPECT_TRUE(rep.undetermined.empty());
  EXPECT_EQ(rep.entries.size(), rep.members.size() + rep.zero.size());
}

TEST(Degree12, IssuesForTwoFive) {
  const auto out = degree12_certificate(2, 5);
  ASSERT_TRUE(out.certificate);
  const auto j = to_json(*out.certificate);
  EXPECT_EQ(j["field"]["type"], "degree12");
  EXPECT_EQ(j["field"]["p"], 5);
  EXPECT_EQ(j["chain"][0]["rule"], "degree6-certificate");
  EXPECT_EQ(j["chain"][0]["data"]["field"]["D"], 5);
  EXPECT_EQ(j["chain"][1]["data"]["point"]["x"], "28");
  EXPECT_EQ(j["chain"][1]["data"]["point"]["y"], "136");
  EXPECT_EQ(j["chain"].back()["rule"], "gfp-composition");
}

TEST(Degree12, Rejections) {
  EXPECT_THROW(degree12_certificate(2, 7), std::invalid_argument);
  EXPECT_THROW(degree12_certificate(4, 5), std::invalid_argument);
  EXPECT_THROW(degree12_certificate(1, 5), std::invalid_argument);
}
