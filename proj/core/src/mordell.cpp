#include "mordellh10/mordell.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace mh10::mordell {

MordellCurve::MordellCurve(Integer a) : a_(std::move(a)) {
  if (a_ == 0) throw std::invalid_argument("MordellCurve: a must be nonzero");
  auto split = arith::strip_sixth_powers(a_);
  core_ = std::move(split.core);
  scale_ = std::move(split.scale);
}

std::string MordellCurve::label() const { return "E_{" + a_.str() + "}"; }

bool RationalPoint::lies_on(const MordellCurve& curve) const {
  if (e <= 0) return false;
  const Integer e2 = e * e;
  const Integer e6 = e2 * e2 * e2;
  return n * n == m * m * m + curve.a() * e6;
}

std::string RationalPoint::to_string() const {
  std::ostringstream os;
  if (e == 1) {
    os << "(" << m << ", " << n << ")";
  } else {
    os << "(" << m << "/" << e * e << ", " << n << "/" << e * e * e << ")";
  }
  return os.str();
}

RationalPoint RationalPoint::from_affine(const Rational& x, const Rational& y) {
  // On an integral Mordell model den(x) = e^2 and den(y) = e^3.
  Integer e;
  const Integer dx = denominator(x);
  if (!arith::is_perfect_square(dx, &e)) {
    throw std::invalid_argument("RationalPoint: x denominator is not a square");
  }
  if (denominator(y) != e * e * e) {
    throw std::invalid_argument("RationalPoint: y denominator is not e^3");
  }
  return RationalPoint{numerator(x), numerator(y), e};
}

bool TorsionClass::contains(const RationalPoint& pt) const {
  return std::find(points.begin(), points.end(), pt) != points.end();
}

TorsionClass torsion(const MordellCurve& curve) {
  const Integer& core = curve.core();
  const Integer t = curve.scale();
  const Integer t2 = t * t, t3 = t2 * t;
  auto pt = [&](const Integer& x, const Integer& y) { return RationalPoint{x * t2, y * t3, 1}; };

  TorsionClass tc;
  Integer c;
  if (core == 1) {
    tc.order = 6;
    tc.points = {pt(-1, 0), pt(0, 1), pt(0, -1), pt(2, 3), pt(2, -3)};
    tc.generator = pt(2, 3);
  } else if (core == -432) {
    tc.order = 3;
    tc.points = {pt(12, 36), pt(12, -36)};
    tc.generator = pt(12, 36);
  } else if (arith::is_perfect_square(core, &c)) {
    tc.order = 3;
    tc.points = {pt(0, c), pt(0, -c)};
    tc.generator = pt(0, c);
  } else if (arith::is_perfect_cube(core, &c)) {
    tc.order = 2;
    tc.points = {pt(-c, 0)};
    tc.generator = pt(-c, 0);
  }
  return tc;
}

std::pair<MordellCurve, MordellCurve> cubic_twists(const MordellCurve& curve, std::int64_t D) {
  if (D <= 1) throw std::invalid_argument("cubic_twists: D must be > 1");
  if (!arith::is_cube_free(D)) throw std::invalid_argument("cubic_twists: D must be cube-free");
  const Integer d2 = Integer(D) * D;
  return {MordellCurve(curve.a() * d2), MordellCurve(curve.a() * d2 * d2)};
}

MordellCurve isogenous_constant(const MordellCurve& curve) { return MordellCurve(Integer(-27) * curve.a()); }

namespace {

weierstrass::Kodaira kodaira_from_valuation(int v) {
  using weierstrass::Kodaira;
  switch (v) {
    case 0: return Kodaira::I0;
    case 1: return Kodaira::II;
    case 2: return Kodaira::IV;
    case 3: return Kodaira::I0Star;
    case 4: return Kodaira::IVStar;
    default: return Kodaira::IIStar;
  }
}

LocalInfo from_tate(const weierstrass::LocalData& d) {
  return LocalInfo{d.p, d.conductor_exponent, d.kodaira, d.local_ap};
}

// Trial division of the core away from 2 and 3. Calls `on_prime(q, v)` for
// every prime factor; stops early (returning false) when `keep_going` says so.
template <typename OnPrime, typename KeepGoing>
bool for_each_prime_factor(const Integer& core, OnPrime on_prime, KeepGoing keep_going) {
  Integer rest = abs(core);
  while (rest % 2 == 0) rest /= 2;
  while (rest % 3 == 0) rest /= 3;
  for (std::int64_t q = 5; Integer(q) * q <= rest; q += 2) {
    if (!keep_going(q, rest)) return false;
    if (rest % q != 0) continue;
    int v = 0;
    while (rest % q == 0) {
      rest /= q;
      ++v;
    }
    on_prime(Integer(q), v);
  }
  if (rest > 1) on_prime(rest, 1);
  return true;
}

}  // namespace

LocalInfo local_info(const MordellCurve& curve, std::int64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("local_info: p must be prime");
  if (p == 2 || p == 3) return from_tate(weierstrass::tate(curve.core_model(), p));
  const int v = curve.core() % p == 0 ? arith::valuation(curve.core(), p) : 0;
  if (v == 0) return LocalInfo{p, 0, weierstrass::Kodaira::I0, ap(curve, p)};
  return LocalInfo{p, 2, kodaira_from_valuation(v), 0};
}

std::vector<LocalInfo> bad_primes(const MordellCurve& curve) {
  std::vector<LocalInfo> out;
  for (std::int64_t p : {2, 3}) {
    auto info = local_info(curve, p);
    if (!info.good()) out.push_back(info);
  }
  for_each_prime_factor(
      curve.core(),
      [&](const Integer& q, int v) {
        if (q > Integer(INT64_MAX)) throw std::overflow_error("bad_primes: prime factor exceeds 63 bits");
        out.push_back(LocalInfo{static_cast<std::int64_t>(q), 2, kodaira_from_valuation(v), 0});
      },
      [](std::int64_t, const Integer&) { return true; });
  return out;
}

Integer conductor(const MordellCurve& curve) {
  Integer n = 1;
  for (std::int64_t p : {2, 3}) {
    const auto info = local_info(curve, p);
    for (int i = 0; i < info.conductor_exponent; ++i) n *= p;
  }
  for_each_prime_factor(
      curve.core(), [&](const Integer& q, int) { n *= q * q; },
      [](std::int64_t, const Integer&) { return true; });
  return n;
}

std::optional<std::int64_t> conductor_capped(const MordellCurve& curve, std::int64_t cap) {
  Integer n = 1;
  for (std::int64_t p : {2, 3}) {
    const auto info = local_info(curve, p);
    for (int i = 0; i < info.conductor_exponent; ++i) n *= p;
  }
  if (n > cap) return std::nullopt;
  bool within = for_each_prime_factor(
      curve.core(), [&](const Integer& q, int) { n *= q * q; },
      [&](std::int64_t q, const Integer& rest) {
        // Any prime left in `rest` is >= q and contributes at least q^2.
        return n <= cap && (rest == 1 || n * q * q <= cap);
      });
  if (!within || n > cap) return std::nullopt;
  return static_cast<std::int64_t>(n);
}

std::int64_t ap(const MordellCurve& curve, std::int64_t p) {
  if (p == 2 || p == 3) return local_info(curve, p).local_ap;
  const std::int64_t a = arith::mod(curve.core(), p);
  if (a == 0) return 0;
  std::vector<std::int8_t> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y <= (p - 1) / 2; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const auto x3 = static_cast<std::int64_t>(arith::mul_mod(arith::mul_mod(x, x, p), x, p));
    sum += chi[static_cast<std::size_t>((x3 + a) % p)];
  }
  return -sum;
}

namespace {

// Affine arithmetic on y^2 = x^3 + A over F_p.
struct Point {
  std::uint64_t x = 0, y = 0;
  bool infinity = true;
};

class CurveModP {
 public:
  CurveModP(std::uint64_t p, std::uint64_t a) : p_(p), a_(a) {}

  Point add(const Point& P, const Point& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    std::uint64_t lambda;
    if (P.x == Q.x) {
      if ((P.y + Q.y) % p_ == 0) return Point{};
      const std::uint64_t num = mul(3, mul(P.x, P.x));
      lambda = mul(num, inv(mul(2, P.y)));
    } else {
      lambda = mul(sub(Q.y, P.y), inv(sub(Q.x, P.x)));
    }
    const std::uint64_t x3 = sub(sub(mul(lambda, lambda), P.x), Q.x);
    const std::uint64_t y3 = sub(mul(lambda, sub(P.x, x3)), P.y);
    return Point{x3, y3, false};
  }

  Point multiply(Point P, std::uint64_t k) const {
    Point acc;
    while (k > 0) {
      if (k & 1U) acc = add(acc, P);
      P = add(P, P);
      k >>= 1U;
    }
    return acc;
  }

  std::optional<Point> lift_x(std::uint64_t x) const {
    const std::uint64_t rhs = (mul(mul(x, x), x) + a_) % p_;
    if (rhs == 0) return std::nullopt;
    const auto sp = static_cast<std::int64_t>(p_);
    if (arith::legendre(static_cast<std::int64_t>(rhs), sp) != 1) return std::nullopt;
    return Point{x, static_cast<std::uint64_t>(arith::sqrt_mod(static_cast<std::int64_t>(rhs), sp)), false};
  }

 private:
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return arith::mul_mod(a, b, p_); }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t inv(std::uint64_t a) const {
    return static_cast<std::uint64_t>(arith::inverse_mod(static_cast<std::int64_t>(a), static_cast<std::int64_t>(p_)));
  }

  std::uint64_t p_, a_;
};

// p = u^2 + 3 v^2 for p = 1 (mod 3), by Cornacchia.
std::pair<std::int64_t, std::int64_t> norm_form(std::int64_t p) {
  std::int64_t r = arith::sqrt_mod(p - 3, p);
  if (2 * r < p) r = p - r;
  std::int64_t a = p, b = r;
  while (b * b >= p) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  const std::int64_t rem = p - b * b;
  if (rem % 3 != 0) throw std::logic_error("norm_form: Cornacchia failed");
  std::int64_t v = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rem / 3))));
  while (v * v > rem / 3) --v;
  while ((v + 1) * (v + 1) <= rem / 3) ++v;
  if (v * v * 3 + b * b != p) throw std::logic_error("norm_form: Cornacchia failed");
  return {b, v};
}

constexpr std::int64_t kNaiveLimit = 100;

}  // namespace

std::int64_t ap_fast(const MordellCurve& curve, std::int64_t p) {
  if (p <= kNaiveLimit) return ap(curve, p);
  const std::int64_t a = arith::mod(curve.core(), p);
  if (a == 0) return 0;
  if (p % 3 == 2) return 0;

  const auto [u, v] = norm_form(p);
  std::vector<std::int64_t> candidates;
  for (std::int64_t t : {2 * u, u + 3 * v, u - 3 * v}) {
    for (std::int64_t s : {t, -t}) {
      if (s * s <= 4 * p && std::find(candidates.begin(), candidates.end(), s) == candidates.end()) {
        candidates.push_back(s);
      }
    }
  }
  const CurveModP group(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(a));
  std::mt19937_64 rng(static_cast<std::uint64_t>(p) * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(a));
  for (int attempt = 0; attempt < 64 && candidates.size() > 1; ++attempt) {
    const auto pt = group.lift_x(rng() % static_cast<std::uint64_t>(p));
    if (!pt) continue;
    std::erase_if(candidates, [&](std::int64_t t) {
      return !group.multiply(*pt, static_cast<std::uint64_t>(p + 1 - t)).infinity;
    });
  }
  if (candidates.size() == 1) return candidates.front();
  if (candidates.empty()) throw std::logic_error("ap_fast: no candidate trace is consistent");
  return ap(curve, p);
}

double real_period_raw(const Integer& a, double tol) {
  if (a == 0) throw std::invalid_argument("real_period: a must be nonzero");
  if (!(tol > 0)) throw std::invalid_argument("real_period: tol must be positive");
  const double ad = a.convert_to<double>();
  const double root = -std::cbrt(ad);
  // x = root + s^2 removes the endpoint singularity: x^3 + a = s^2 q(x).
  auto integrand = [root](double s) {
    const double x = root + s * s;
    return 2.0 / std::sqrt(x * x + root * x + root * root);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(integrand, std::sqrt(std::numeric_limits<double>::epsilon()) > tol
                                             ? std::sqrt(std::numeric_limits<double>::epsilon())
                                             : tol);
}

double real_period(const MordellCurve& curve, double tol) { return real_period_raw(curve.core(), tol); }

namespace {

bool is_square_i128(__int128 v, __int128* root) {
  if (v < 0) return false;
  // Quadratic residues mod 64 reject most non-squares cheaply.
  static constexpr std::uint64_t kSquaresMod64 = [] {
    std::uint64_t mask = 0;
    for (std::uint64_t r = 0; r < 64; ++r) mask |= std::uint64_t{1} << (r * r % 64);
    return mask;
  }();
  if (((kSquaresMod64 >> static_cast<unsigned>(v & 63)) & 1U) == 0) return false;
  auto r = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return false;
  *root = r;
  return true;
}

Integer to_integer(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<std::uint64_t>(u >> 64U);
  Integer out = (hi << 64) + static_cast<std::uint64_t>(u & ~std::uint64_t{0});
  return neg ? Integer(-out) : out;
}

}  // namespace

std::optional<RationalPoint> point_search(const MordellCurve& curve, std::int64_t height_bound) {
  if (height_bound < 1) throw std::invalid_argument("point_search: height_bound must be >= 1");
  const TorsionClass tors = torsion(curve);
  std::int64_t cube_root = 0;
  while ((cube_root + 1) * (cube_root + 1) * (cube_root + 1) <= height_bound) ++cube_root;
  const std::int64_t e_max = cube_root + 1;

  const Integer& a = curve.a();
  Integer e6_max = 1;
  for (int i = 0; i < 6; ++i) e6_max *= e_max;
  const bool fits = abs(a) * e6_max < (Integer(1) << 120) && height_bound < (std::int64_t{1} << 36);

  auto accept = [&](const RationalPoint& pt) { return pt.n != 0 && !(pt.e == 1 && tors.contains(pt)); };

  for (std::int64_t e = 1; e <= e_max; ++e) {
    Integer e6 = 1;
    for (int i = 0; i < 6; ++i) e6 *= e;
    const Integer ae6 = a * e6;
    if (fits) {
      const Integer mag = abs(ae6);
      const auto lo = static_cast<std::uint64_t>(mag & Integer(~std::uint64_t{0}));
      const auto hi = static_cast<std::uint64_t>(mag >> 64);
      __int128 c = (static_cast<__int128>(hi) << 64) | lo;
      if (ae6 < 0) c = -c;
      for (std::int64_t k = 0; k <= height_bound; ++k) {
        for (int sign = -1; sign <= 1; sign += 2) {
          if (k == 0 && sign == 1) continue;
          const std::int64_t m = sign * k;
          if (arith::gcd(m, e) != 1) continue;
          const __int128 v = static_cast<__int128>(m) * m * m + c;
          __int128 n;
          if (!is_square_i128(v, &n)) continue;
          RationalPoint pt{Integer(m), to_integer(n), Integer(e)};
          if (accept(pt)) return pt;
        }
      }
    } else {
      for (std::int64_t k = 0; k <= height_bound; ++k) {
        for (int sign = -1; sign <= 1; sign += 2) {
          if (k == 0 && sign == 1) continue;
          const std::int64_t m = sign * k;
          if (arith::gcd(m, e) != 1) continue;
          const Integer v = Integer(m) * m * m + ae6;
          Integer n;
          if (!arith::is_perfect_square(v, &n)) continue;
          RationalPoint pt{Integer(m), n, Integer(e)};
          if (accept(pt)) return pt;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace mh10::mordell
