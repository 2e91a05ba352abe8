#include "mordellh10/cubesum.hpp"

#include <sstream>
#include <stdexcept>

namespace mh10::cubesum {

using mordell::MordellCurve;
using mordell::RationalPoint;

std::string to_string(Status s) {
  switch (s) {
    case Status::CubeSum: return "CubeSum";
    case Status::NotCubeSum: return "NotCubeSum";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::SylvesterA: return "Sylvester-a";
    case Rule::DvBi: return "DV-b(i)";
    case Rule::MsBii: return "MS-b(ii)";
    case Rule::PointWitness: return "PointWitness";
    case Rule::LValueZeroRank: return "LValueZeroRank";
    case Rule::AnalyticRankOne: return "AnalyticRankOne";
    case Rule::None: return "None";
  }
  return "?";
}

namespace {

bool odd_prime(std::int64_t n) { return n > 2 && arith::is_prime(n); }

bool sylvester_prime(std::int64_t p) { return odd_prime(p) && (p % 9 == 2 || p % 9 == 5); }
bool dv_prime(std::int64_t p) { return odd_prime(p) && (p % 9 == 4 || p % 9 == 7); }
bool ms_prime(std::int64_t l) { return arith::is_prime(l) && l % 9 == 8; }

std::optional<std::int64_t> exact_sqrt(std::int64_t n) {
  if (n < 0) return std::nullopt;
  Integer r;
  if (!arith::is_perfect_square(Integer(n), &r)) return std::nullopt;
  return static_cast<std::int64_t>(r);
}

std::string describe(const char* shape, std::int64_t p) {
  std::ostringstream os;
  os << "D = " << shape << " with p = " << p;
  return os.str();
}

}  // namespace

CubeSumVerdict classify_by_congruence(std::int64_t D) {
  if (D <= 2) throw std::invalid_argument("classify_by_congruence: D must exceed 2");
  if (!arith::is_cube_free(D)) throw std::invalid_argument("classify_by_congruence: D must be cube-free");
  CubeSumVerdict v;
  v.D = D;

  // (a) p, p^2, 9p, 9p^2 with p = 2, 5 (mod 9).
  {
    const std::int64_t base = D % 9 == 0 ? D / 9 : D;
    std::int64_t p = 0;
    const char* shape = nullptr;
    if (sylvester_prime(base)) {
      p = base;
      shape = D == base ? "p" : "9p";
    } else if (auto r = exact_sqrt(base); r && sylvester_prime(*r)) {
      p = *r;
      shape = D == base ? "p^2" : "9p^2";
    }
    if (p != 0) {
      v.status = Status::NotCubeSum;
      v.rule = Rule::SylvesterA;
      v.detail = describe(shape, p) + ", p = " + std::to_string(p % 9) + " (mod 9)";
      return v;
    }
  }

  // (b)(i) D = p = 4, 7 (mod 9) with 3 not a cube mod p.
  if (dv_prime(D) && !arith::cubic_residue_test(3, D)) {
    v.status = Status::CubeSum;
    v.rule = Rule::DvBi;
    v.detail = "D = p = " + std::to_string(D % 9) + " (mod 9) and 3 is not a cube mod p";
    return v;
  }

  // (b)(ii) l p, l p^2, p l^2 with l = 8 (mod 9), p = 4, 7 (mod 9), l not a cube mod p.
  const auto factors = arith::factorize(D);
  if (factors.size() == 2) {
    for (int i = 0; i < 2; ++i) {
      const auto [l, el] = factors[i];
      const auto [p, ep] = factors[1 - i];
      if (!ms_prime(l) || !dv_prime(p)) continue;
      if (!((el == 1 && ep == 1) || (el == 1 && ep == 2) || (el == 2 && ep == 1))) continue;
      if (arith::cubic_residue_test(l % p, p)) continue;
      v.status = Status::NotCubeSum;
      v.rule = Rule::MsBii;
      std::ostringstream os;
      os << "D = " << (el == 1 && ep == 1 ? "lp" : el == 1 ? "lp^2" : "pl^2") << " with l = " << l << ", p = " << p
         << ", l not a cube mod p";
      v.detail = os.str();
      return v;
    }
  }
  v.detail = "no congruence rule applies";
  return v;
}

bool verify_cube_sum(const Rational& D, const CubePair& pair) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const Integer a = numerator(pair.X), b = denominator(pair.X);
  const Integer c = numerator(pair.Y), d = denominator(pair.Y);
  const Integer lhs = a * a * a * d * d * d + c * c * c * b * b * b;
  const Integer bd = b * d;
  return lhs * denominator(D) == numerator(D) * bd * bd * bd;
}

RationalPoint cubesum_to_point(const Rational& D, const CubePair& pair) {
  const Rational s = pair.X + pair.Y;
  if (s == 0) throw std::invalid_argument("cubesum_to_point: X + Y = 0");
  return RationalPoint::from_affine(12 * D / s, 36 * D * (pair.X - pair.Y) / s);
}

CubePair point_to_cubesum(const Rational& D, const RationalPoint& point) {
  const Rational x = point.x(), y = point.y();
  if (x == 0) throw std::invalid_argument("point_to_cubesum: x = 0");
  return {(36 * D + y) / (6 * x), (36 * D - y) / (6 * x)};
}

std::optional<CubePair> cube_sum_search(std::int64_t D, std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("cube_sum_search: bound must be positive");
  for (std::int64_t q = 1; q <= bound; ++q) {
    const Integer target = Integer(D) * q * q * q;
    for (std::int64_t u = -q * bound; u <= q * bound; ++u) {
      const Integer rest = target - Integer(u) * u * u;
      Integer v;
      if (!arith::is_perfect_cube(rest, &v)) continue;
      return CubePair{Rational(Integer(u), Integer(q)), Rational(v, Integer(q))};
    }
  }
  return std::nullopt;
}

std::optional<std::int64_t> cube_sum_parameter(const MordellCurve& curve) {
  const Integer& c = curve.core();
  for (const std::int64_t s : {1, 2, 3, 6}) {
    const Integer s6 = Integer(s) * s * s * s * s * s;
    const Integer scaled = c * s6;
    Integer quotient;
    if (scaled < 0 && scaled % 432 == 0) {
      quotient = scaled / -432;
    } else if (scaled > 0 && scaled % 16 == 0) {
      quotient = scaled / 16;
    } else {
      continue;
    }
    Integer root;
    if (!arith::is_perfect_square(quotient, &root)) continue;
    if (root <= 2 || root > Integer(INT64_MAX)) continue;
    const auto d = static_cast<std::int64_t>(root);
    if (arith::is_cube_free(d)) return d;
  }
  return std::nullopt;
}

CubeSumVerdict decide(std::int64_t D, const lseries::RankConfig& config, std::int64_t witness_bound) {
  CubeSumVerdict v = classify_by_congruence(D);
  if (v.status != Status::Unknown) return v;
  if (auto w = cube_sum_search(D, witness_bound)) {
    v.status = Status::CubeSum;
    v.rule = Rule::PointWitness;
    v.witness = w;
    v.detail = "explicit witness";
    return v;
  }
  lseries::RankConfig cfg = config;
  cfg.use_congruence = false;
  const MordellCurve curve(Integer(-432) * D * D);
  const auto ev = lseries::rank_evidence(curve, cfg);
  switch (ev.verdict) {
    case lseries::Verdict::PositiveByPoint: {
      const CubePair w = point_to_cubesum(Rational(D), *ev.point);
      if (!verify_cube_sum(Rational(D), w)) throw std::logic_error("decide: point does not map to a cube sum");
      v.status = Status::CubeSum;
      v.rule = Rule::PointWitness;
      v.witness = w;
      v.detail = "from point " + ev.point->to_string() + " on " + curve.label();
      break;
    }
    case lseries::Verdict::OneByGZK:
      v.status = Status::CubeSum;
      v.rule = Rule::AnalyticRankOne;
      v.detail = "eps = -1 and L'(1) != 0 on " + curve.label();
      break;
    case lseries::Verdict::ZeroByLValue:
      v.status = Status::NotCubeSum;
      v.rule = Rule::LValueZeroRank;
      v.detail = "L(1) != 0 on " + curve.label();
      break;
    default:
      v.detail = "rank undetermined on " + curve.label() + ": " + ev.note;
      break;
  }
  return v;
}

CubeSumPrimeSearch find_cubesum_prime(std::int64_t a_res, std::int64_t d, std::int64_t search_bound,
                                      const lseries::RankConfig& config, std::int64_t witness_bound) {
  if (arith::mod(a_res, 9) != 8) throw std::invalid_argument("find_cubesum_prime: a_res must be 8 (mod 9)");
  if (d < 1) throw std::invalid_argument("find_cubesum_prime: d must be positive");
  if (arith::gcd(arith::mod(a_res, d), d) != 1 && d > 1) {
    throw std::invalid_argument("find_cubesum_prime: a_res and d must be coprime");
  }
  const std::int64_t modulus = 9 * d;
  CubeSumPrimeSearch out;
  lseries::RankConfig cfg = config;
  cfg.use_congruence = false;
  for (std::int64_t l = arith::mod(a_res, modulus); l <= search_bound; l += modulus) {
    if (!arith::is_prime(l)) continue;
    ++out.primes_tried;
    if (auto w = cube_sum_search(l, witness_bound)) {
      CubeSumPrime found{l, {l, Status::CubeSum, Rule::PointWitness, w, "explicit witness"}, std::nullopt};
      out.found = std::move(found);
      return out;
    }
    const MordellCurve curve(Integer(-432) * l * l);
    auto ev = lseries::rank_evidence(curve, cfg);
    if (!ev.positive()) continue;
    CubeSumVerdict v{l, Status::CubeSum, Rule::AnalyticRankOne, std::nullopt, ""};
    if (ev.point) {
      v.rule = Rule::PointWitness;
      v.witness = point_to_cubesum(Rational(l), *ev.point);
      v.detail = "from point " + ev.point->to_string() + " on " + curve.label();
    } else {
      v.detail = "eps = -1 and L'(1) != 0 on " + curve.label();
    }
    out.found = CubeSumPrime{l, std::move(v), std::move(ev)};
    return out;
  }
  return out;
}

}  // namespace mh10::cubesum
