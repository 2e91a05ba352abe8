#pragma once

// Integer and modular arithmetic used by every other module: prime sieve,
// residue classes mod 9, cubic residues, CRT and power-free predicates.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mh10 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace arith {

/// Residue data of a prime with respect to 9.
struct PrimeClass {
  std::int64_t p = 0;
  int class9 = 0;  // p mod 9; one of {1,2,4,5,7,8} unless is_three
  bool is_three = false;
};

PrimeClass classify_prime(std::int64_t p);

/// All primes <= limit in ascending order (empty when limit < 2).
std::vector<std::int64_t> sieve_primes(std::int64_t limit);

/// Smallest prime factor for every n <= limit (spf[0] = spf[1] = 0).
std::vector<std::int32_t> smallest_prime_factors(std::int64_t limit);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::int64_t n);

/// Prime factorization of |n| by trial division, ascending primes.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_cube_free(std::int64_t n);
bool is_square_free(std::int64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mod(const Integer& a, std::int64_t m);
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

/// Legendre symbol (a/p) for an odd prime p; 0 when p | a.
int legendre(std::int64_t a, std::int64_t p);

/// A square root of a mod an odd prime p (Tonelli-Shanks); requires
/// legendre(a, p) != -1.
std::int64_t sqrt_mod(std::int64_t a, std::int64_t p);

/// True iff c is a nonzero cube modulo the prime p. Rejects p | c.
bool cubic_residue_test(std::int64_t c, std::int64_t p);

struct Congruence {
  std::int64_t residue = 0;
  std::int64_t modulus = 1;
};

/// Smallest nonnegative x with x = r (mod m) for every pair. Moduli must be
/// pairwise coprime.
std::int64_t crt(std::span<const Congruence> system);

std::int64_t gcd(std::int64_t a, std::int64_t b);

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n, Integer* root = nullptr);
/// Integer cube root of any sign (floor toward zero is exact only for cubes).
bool is_perfect_cube(const Integer& n, Integer* root = nullptr);
bool is_perfect_cube(std::int64_t n, std::int64_t* root = nullptr);

/// Writes a = core * scale^6 with core sixth-power free. Trial division up to
/// |a|^(1/6).
struct SixthPowerSplit {
  Integer core;
  Integer scale;
};
SixthPowerSplit strip_sixth_powers(const Integer& a);

/// p-adic valuation of a nonzero integer.
int valuation(const Integer& n, std::int64_t p);

}  // namespace arith
}  // namespace mh10
