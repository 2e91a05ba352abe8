#pragma once

// General integral Weierstrass models and Tate's algorithm. Mordell curves
// need this only at p = 2 and 3, where y^2 = x^3 + a can fail to be minimal
// even after removing sixth powers (y^2 = x^3 + 16 is y^2 + y = x^3).

#include <cstdint>
#include <string>

#include "mordellh10/arith.hpp"

namespace mh10::weierstrass {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct Model {
  Integer a1, a2, a3, a4, a6;

  Integer b2() const;
  Integer b4() const;
  Integer b6() const;
  Integer b8() const;
  Integer c4() const;
  Integer c6() const;
  Integer discriminant() const;

  /// Substitution x = x' + r, y = y' + s x' + t.
  Model rst_transform(const Integer& r, const Integer& s, const Integer& t) const;

  friend bool operator==(const Model&, const Model&) = default;
};

std::string to_string(const Model& m);

enum class Kodaira { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };
std::string to_string(Kodaira k);

struct LocalData {
  std::int64_t p = 0;
  Model minimal;          // p-minimal model reached by the algorithm
  int disc_valuation = 0; // valuation of the minimal discriminant
  int conductor_exponent = 0;
  Kodaira kodaira = Kodaira::I0;
  /// Trace of Frobenius on the minimal model: p + 1 - #E(F_p) when good,
  /// +1 / -1 for split / nonsplit multiplicative, 0 for additive.
  std::int64_t local_ap = 0;
  bool good() const { return conductor_exponent == 0; }
};

/// Tate's algorithm at p for an integral model. Reduction of type I_n* with
/// n > 0 (potentially multiplicative, additive) is rejected with
/// std::domain_error; it cannot occur for curves with integral j.
LocalData tate(const Model& model, std::int64_t p);

/// Number of affine solutions mod p, by exhaustion over (x, y).
std::int64_t count_affine_points(const Model& model, std::int64_t p);

}  // namespace mh10::weierstrass
