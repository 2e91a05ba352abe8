#pragma once

// The Mordell family y^2 = x^3 + a: twists, local data, traces of Frobenius,
// real period and small-height point search.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mordellh10/arith.hpp"
#include "mordellh10/weierstrass.hpp"

namespace mh10::mordell {

/// y^2 = x^3 + a with a != 0. The constant is kept raw; everything that
/// depends on a model works on the sixth-power-free core internally.
class MordellCurve {
 public:
  explicit MordellCurve(Integer a);
  explicit MordellCurve(std::int64_t a) : MordellCurve(Integer(a)) {}

  const Integer& a() const { return a_; }
  /// a = core * scale^6 with core sixth-power free.
  const Integer& core() const { return core_; }
  const Integer& scale() const { return scale_; }
  Integer discriminant() const { return Integer(-432) * a_ * a_; }
  weierstrass::Model model() const { return {0, 0, 0, 0, a_}; }
  weierstrass::Model core_model() const { return {0, 0, 0, 0, core_}; }
  std::string label() const;

  friend bool operator==(const MordellCurve& l, const MordellCurve& r) { return l.a_ == r.a_; }
  friend std::strong_ordering operator<=>(const MordellCurve& l, const MordellCurve& r) {
    if (l.a_ < r.a_) return std::strong_ordering::less;
    if (l.a_ > r.a_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Integer a_;
  Integer core_;
  Integer scale_;
};

/// (m / e^2, n / e^3) with e > 0 and gcd(m, e) = 1.
struct RationalPoint {
  Integer m;
  Integer n;
  Integer e = 1;

  Rational x() const { return Rational(m, e * e); }
  Rational y() const { return Rational(n, e * e * e); }
  bool lies_on(const MordellCurve& curve) const;
  std::string to_string() const;
  static RationalPoint from_affine(const Rational& x, const Rational& y);

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

struct TorsionClass {
  int order = 1;
  /// Every nontrivial torsion point, on the raw model.
  std::vector<RationalPoint> points;
  /// A point of exact order `order` (absent for the trivial group).
  std::optional<RationalPoint> generator;

  bool contains(const RationalPoint& pt) const;
};

TorsionClass torsion(const MordellCurve& curve);

/// (E_{aD^2}, E_{aD^4}). D must be cube-free and > 1; a common factor with a
/// is allowed.
std::pair<MordellCurve, MordellCurve> cubic_twists(const MordellCurve& curve, std::int64_t D);

/// Target of the rational 3-isogeny E_a -> E_{-27a}.
MordellCurve isogenous_constant(const MordellCurve& curve);

struct LocalInfo {
  std::int64_t p = 0;
  int conductor_exponent = 0;
  weierstrass::Kodaira kodaira = weierstrass::Kodaira::I0;
  std::int64_t local_ap = 0;
  bool good() const { return conductor_exponent == 0; }
};

/// Local data at p, via Tate's algorithm at 2 and 3 and the valuation of the
/// core at p >= 5.
LocalInfo local_info(const MordellCurve& curve, std::int64_t p);

/// Primes of bad reduction together with their local data, ascending.
std::vector<LocalInfo> bad_primes(const MordellCurve& curve);

Integer conductor(const MordellCurve& curve);

/// Conductor, or nullopt as soon as it is known to exceed `cap`.
std::optional<std::int64_t> conductor_capped(const MordellCurve& curve, std::int64_t cap);

/// Trace of Frobenius by the quadratic character sum. Bad primes give the
/// bad-reduction coefficient.
std::int64_t ap(const MordellCurve& curve, std::int64_t p);

/// Same value as ap(); for good p = 1 (mod 3) it uses the norm form
/// p = u^2 + 3 v^2 to list the six candidate traces and eliminates them by
/// point orders, falling back to ap() if points cannot separate them.
std::int64_t ap_fast(const MordellCurve& curve, std::int64_t p);

/// Omega = integral of dx / sqrt(x^3 + a) over [real root, infinity) for the
/// raw constant a.
double real_period_raw(const Integer& a, double tol = 1e-12);

/// Real period of the sixth-power-free model y^2 = x^3 + core.
double real_period(const MordellCurve& curve, double tol = 1e-12);

/// Exhaustive search over denominators e <= floor(height_bound^(1/3)) + 1 and
/// numerators |m| <= height_bound for a point that is not torsion. Returns the
/// point with smallest e, then smallest |m| (negative m first), with n > 0.
std::optional<RationalPoint> point_search(const MordellCurve& curve, std::int64_t height_bound);

}  // namespace mh10::mordell
