#pragma once

// Rational cube sums X^3 + Y^3 = D and the curve y^2 = x^3 - 432 D^2.

#include <cstdint>
#include <optional>
#include <string>

#include "mordellh10/lseries.hpp"
#include "mordellh10/mordell.hpp"

namespace mh10::cubesum {

enum class Status { CubeSum, NotCubeSum, Unknown };

/// How a verdict was reached. AnalyticRankOne covers cube sums certified by
/// eps = -1 and L'(1) != 0 on E_{-432 D^2} without an explicit witness.
enum class Rule { SylvesterA, DvBi, MsBii, PointWitness, LValueZeroRank, AnalyticRankOne, None };

std::string to_string(Status s);
std::string to_string(Rule r);

struct CubePair {
  Rational X;
  Rational Y;
  friend bool operator==(const CubePair&, const CubePair&) = default;
};

struct CubeSumVerdict {
  std::int64_t D = 0;
  Status status = Status::Unknown;
  Rule rule = Rule::None;
  std::optional<CubePair> witness;
  std::string detail;
};

/// Congruence rules, in order: Sylvester (p, p^2, 9p, 9p^2 with p = 2,5 mod 9
/// an odd prime), the prime rule (p = 4,7 mod 9 with 3 not a cube mod p) and
/// the two-prime rule (lp, lp^2, pl^2 with l = 8 mod 9, p = 4,7 mod 9, l not
/// a cube mod p). D must be cube-free and > 2.
CubeSumVerdict classify_by_congruence(std::int64_t D);

bool verify_cube_sum(const Rational& D, const CubePair& pair);

/// x = 12D / (X+Y), y = 36D (X-Y) / (X+Y), a point on y^2 = x^3 - 432 D^2.
mordell::RationalPoint cubesum_to_point(const Rational& D, const CubePair& pair);
/// Inverse map: X = (36D + y) / (6x), Y = (36D - y) / (6x).
CubePair point_to_cubesum(const Rational& D, const mordell::RationalPoint& point);

/// Smallest-denominator solution (u/q)^3 + (v/q)^3 = D with q <= bound and
/// |u| <= q * bound, u ascending within a denominator.
std::optional<CubePair> cube_sum_search(std::int64_t D, std::int64_t bound);

/// D' > 2 cube-free with curve = E_{-432 D'^2} or its 3-isogenous partner
/// E_{16 D'^2}, up to sixth powers.
std::optional<std::int64_t> cube_sum_parameter(const mordell::MordellCurve& curve);

/// Congruence rules, then an explicit witness up to `witness_bound`, then the
/// rank evidence of E_{-432 D^2}.
CubeSumVerdict decide(std::int64_t D, const lseries::RankConfig& config, std::int64_t witness_bound = 12);

struct CubeSumPrime {
  std::int64_t ell = 0;
  CubeSumVerdict verdict;
  std::optional<lseries::RankEvidence> evidence;
};

struct CubeSumPrimeSearch {
  std::optional<CubeSumPrime> found;  // nullopt: NotFound below the bound
  std::int64_t primes_tried = 0;
};

/// Least prime l <= search_bound with l = a_res (mod 9d) that is verified to
/// be a cube sum. Requires a_res = 8 (mod 9), d >= 1, gcd(a_res, d) = 1.
CubeSumPrimeSearch find_cubesum_prime(std::int64_t a_res, std::int64_t d, std::int64_t search_bound,
                                      const lseries::RankConfig& config, std::int64_t witness_bound = 12);

}  // namespace mh10::cubesum
