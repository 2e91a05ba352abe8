#include "mordellh10/weierstrass.hpp"

#include <sstream>
#include <stdexcept>

namespace mh10::weierstrass {

Integer Model::b2() const { return a1 * a1 + 4 * a2; }
Integer Model::b4() const { return 2 * a4 + a1 * a3; }
Integer Model::b6() const { return a3 * a3 + 4 * a6; }
Integer Model::b8() const {
  return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}
Integer Model::c4() const { return b2() * b2() - 24 * b4(); }
Integer Model::c6() const {
  const Integer b2v = b2();
  return -b2v * b2v * b2v + 36 * b2v * b4() - 216 * b6();
}
Integer Model::discriminant() const {
  const Integer b2v = b2(), b4v = b4(), b6v = b6(), b8v = b8();
  return -b2v * b2v * b8v - 8 * b4v * b4v * b4v - 27 * b6v * b6v + 9 * b2v * b4v * b6v;
}

Model Model::rst_transform(const Integer& r, const Integer& s, const Integer& t) const {
  Model m;
  m.a1 = a1 + 2 * s;
  m.a2 = a2 - s * a1 + 3 * r - s * s;
  m.a3 = a3 + r * a1 + 2 * t;
  m.a4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
  m.a6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
  return m;
}

std::string to_string(const Model& m) {
  std::ostringstream os;
  os << "[" << m.a1 << "," << m.a2 << "," << m.a3 << "," << m.a4 << "," << m.a6 << "]";
  return os.str();
}

std::string to_string(Kodaira k) {
  switch (k) {
    case Kodaira::I0: return "I0";
    case Kodaira::In: return "In";
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::I0Star: return "I0*";
    case Kodaira::InStar: return "In*";
    case Kodaira::IVStar: return "IV*";
    case Kodaira::IIIStar: return "III*";
    case Kodaira::IIStar: return "II*";
  }
  return "?";
}

std::int64_t count_affine_points(const Model& model, std::int64_t p) {
  const std::int64_t a1 = arith::mod(model.a1, p), a2 = arith::mod(model.a2, p),
                     a3 = arith::mod(model.a3, p), a4 = arith::mod(model.a4, p),
                     a6 = arith::mod(model.a6, p);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = ((((x + a2) % p) * x % p + a4) % p * x % p + a6) % p;
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = (y * y + (a1 * x + a3) % p * y) % p;
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

namespace {

constexpr int kInfiniteValuation = 1 << 20;

struct PAdic {
  std::int64_t p;

  bool divides(const Integer& x) const { return x % p == 0; }
  int val(const Integer& x) const { return x == 0 ? kInfiniteValuation : arith::valuation(x, p); }
  Integer reduce(const Integer& x) const { return arith::mod(x, p); }
  Integer inv(const Integer& x) const { return arith::inverse_mod(arith::mod(x, p), p); }
  Integer pow(int k) const {
    Integer r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
  }
  // Square roots mod 2 and cube roots mod 3 are the identity on residues.
  Integer root(const Integer& x) const { return reduce(x); }
  // Number of roots in F_p of T^2 + b T + c.
  bool quadratic_has_root(const Integer& b, const Integer& c) const {
    const std::int64_t bb = arith::mod(b, p), cc = arith::mod(c, p);
    for (std::int64_t t = 0; t < p && t < 64; ++t) {
      if (p < 64 && (t * t + bb * t + cc) % p == 0) return true;
    }
    if (p < 64) return false;
    const std::int64_t disc = arith::mod(bb * bb - 4 * cc, p);
    return arith::legendre(disc, p) >= 0;
  }
};

}  // namespace

LocalData tate(const Model& model, std::int64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("tate: p must be prime");
  const PAdic P{p};
  Model c = model;
  LocalData out;
  out.p = p;
  const Integer pp = p;
  const Integer half = p == 2 ? Integer(0) : P.inv(2);

  while (true) {
    const Integer delta = c.discriminant();
    if (delta == 0) throw std::invalid_argument("tate: singular model");
    const int vd = P.val(delta);
    out.disc_valuation = vd;
    if (vd == 0) {
      out.minimal = c;
      out.kodaira = Kodaira::I0;
      out.conductor_exponent = 0;
      out.local_ap = p + 1 - (count_affine_points(c, p) + 1);
      return out;
    }

    // Move the singular point to (0, 0): p | a3, a4, a6.
    Integer r, t;
    {
      const Integer b2 = c.b2(), b4 = c.b4(), b6 = c.b6(), c4 = c.c4(), c6 = c.c6();
      if (p == 2) {
        if (P.divides(b2)) {
          r = P.root(c.a4);
          t = P.root(((r + c.a2) * r + c.a4) * r + c.a6);
        } else {
          const Integer inv_a1 = P.inv(c.a1);
          r = inv_a1 * c.a3;
          t = inv_a1 * (c.a4 + r * r);
        }
      } else if (p == 3) {
        if (P.divides(b2)) {
          r = P.root(-b6);
        } else {
          r = -P.inv(b2) * b4;
        }
        t = c.a1 * r + c.a3;
      } else {
        if (P.divides(c4)) {
          r = -P.inv(12) * b2;
        } else {
          r = -P.inv(12 * c4) * (c6 + b2 * c4);
        }
        t = -half * (c.a1 * r + c.a3);
      }
      r = P.reduce(r);
      t = P.reduce(t);
    }
    c = c.rst_transform(r, 0, t);

    if (!P.divides(c.c4())) {
      out.minimal = c;
      out.kodaira = Kodaira::In;
      out.conductor_exponent = 1;
      out.local_ap = P.quadratic_has_root(c.a1, -c.a2) ? 1 : -1;
      return out;
    }
    out.local_ap = 0;
    if (P.val(c.a6) < 2) {
      out.minimal = c;
      out.kodaira = Kodaira::II;
      out.conductor_exponent = vd;
      return out;
    }
    if (P.val(c.b8()) < 3) {
      out.minimal = c;
      out.kodaira = Kodaira::III;
      out.conductor_exponent = vd - 1;
      return out;
    }
    if (P.val(c.b6()) < 3) {
      out.minimal = c;
      out.kodaira = Kodaira::IV;
      out.conductor_exponent = vd - 2;
      return out;
    }

    // p | a1, a2; p^2 | a3, a4; p^3 | a6.
    Integer s;
    if (p == 2) {
      s = P.root(c.a2);
      t = pp * P.root(c.a6 / (pp * pp));
    } else if (p == 3) {
      s = c.a1;
      t = c.a3;
    } else {
      s = -c.a1 * half;
      t = -c.a3 * half;
    }
    c = c.rst_transform(0, s, t);

    const Integer b = c.a2 / pp;
    const Integer cc = c.a4 / (pp * pp);
    const Integer d = c.a6 / (pp * pp * pp);
    const Integer w = 27 * d * d - b * b * cc * cc + 4 * b * b * b * d - 18 * b * cc * d + 4 * cc * cc * cc;
    const Integer x = 3 * cc - b * b;
    int multiplicity;
    if (P.divides(w)) {
      multiplicity = P.divides(x) ? 3 : 2;
    } else {
      multiplicity = 1;
    }

    if (multiplicity == 1) {
      out.minimal = c;
      out.kodaira = Kodaira::I0Star;
      out.conductor_exponent = vd - 4;
      return out;
    }
    if (multiplicity == 2) {
      throw std::domain_error("tate: reduction type In* (potentially multiplicative) not supported");
    }

    // Triple root: move it to 0.
    if (p == 2) {
      r = b;
    } else if (p == 3) {
      r = P.root(-d);
    } else {
      r = -b * P.inv(3);
    }
    r = pp * P.reduce(r);
    c = c.rst_transform(r, 0, 0);

    const Integer x3 = c.a3 / (pp * pp);
    const Integer x6 = c.a6 / P.pow(4);
    if (!P.divides(x3 * x3 + 4 * x6)) {
      out.minimal = c;
      out.kodaira = Kodaira::IVStar;
      out.conductor_exponent = vd - 6;
      return out;
    }
    if (p == 2) {
      t = -pp * pp * P.root(x6);
    } else {
      t = pp * pp * P.reduce(-x3 * half);
    }
    c = c.rst_transform(0, 0, t);
    if (P.val(c.a4) < 4) {
      out.minimal = c;
      out.kodaira = Kodaira::IIIStar;
      out.conductor_exponent = vd - 7;
      return out;
    }
    if (P.val(c.a6) < 6) {
      out.minimal = c;
      out.kodaira = Kodaira::IIStar;
      out.conductor_exponent = vd - 8;
      return out;
    }
    // Not minimal at p: scale by u = p and restart.
    c.a1 /= pp;
    c.a2 /= P.pow(2);
    c.a3 /= P.pow(3);
    c.a4 /= P.pow(4);
    c.a6 /= P.pow(6);
  }
}

}  // namespace mh10::weierstrass
