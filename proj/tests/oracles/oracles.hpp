#pragma once

// Test-side reference implementations. They share no code with the library
// and favour obviousness over speed.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_upto(std::int64_t limit);
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);
bool cube_free(std::int64_t n);
bool square_free(std::int64_t n);

/// Some x with x^3 = c (mod p), by exhaustion.
bool is_cube_mod(std::int64_t c, std::int64_t p);

/// #E(F_p) for y^2 = x^3 + a (including infinity), exhausting all (x, y).
std::int64_t count_points(std::int64_t a, std::int64_t p);
/// p + 1 - #E(F_p) for p not dividing 6a.
std::int64_t trace(std::int64_t a, std::int64_t p);

/// Real period of y^2 = x^3 + a via Beta functions.
double omega(double a);

/// E1(x) by composite Simpson quadrature.
double e1(double x);

struct Point {
  bool inf = true;
  Rat x, y;
};
Point add(const Point& p, const Point& q, const Rat& a);
/// Order of a point of y^2 = x^3 + a when <= bound, else 0.
int order(const Point& p, const Rat& a, int bound = 12);

/// Torsion points (excluding infinity) of y^2 = x^3 + a by Nagell-Lutz
/// enumeration with exact orders.
std::vector<Point> torsion_points(std::int64_t a);

/// Every (X, Y) = (u/q, v/q) with q <= bound, |u|, |v| <= q * bound and
/// X^3 + Y^3 = D, with smallest q found first.
std::optional<std::pair<Rat, Rat>> cube_sum(std::int64_t D, std::int64_t bound);

/// Relative residual of g(1/t) = eps t^2 g(t) for the theta series built
/// from the traces `ap` (good primes; bad primes get bad_ap).
double theta_residual(const std::vector<std::int64_t>& an, double conductor, int eps, double t);

/// Dirichlet coefficients from point counts; `bad` maps bad primes to a_p.
std::vector<std::int64_t> coefficients(std::int64_t a, std::int64_t terms,
                                       const std::vector<std::pair<std::int64_t, std::int64_t>>& bad);

}  // namespace oracle
