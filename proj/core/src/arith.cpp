#include "mordellh10/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mh10::arith {

PrimeClass classify_prime(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("classify_prime: not a prime: " + std::to_string(p));
  PrimeClass c;
  c.p = p;
  c.is_three = (p == 3);
  c.class9 = static_cast<int>(p % 9);
  return c;
}

std::vector<std::int64_t> sieve_primes(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

std::vector<std::int32_t> smallest_prime_factors(std::int64_t limit) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(std::max<std::int64_t>(limit, 1)) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    spf[i] = static_cast<std::int32_t>(i);
    if (i <= limit / i) {
      for (std::int64_t j = i * i; j <= limit; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
      }
    }
  }
  return spf;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  const auto un = static_cast<std::uint64_t>(n);
  std::uint64_t d = un - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t witness : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(witness, d, un);
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::uint64_t q = 2; q * q <= m; q += (q == 2 ? 1 : 2)) {
    if (m % q != 0) continue;
    int e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    out.emplace_back(static_cast<std::int64_t>(q), e);
  }
  if (m > 1) out.emplace_back(static_cast<std::int64_t>(m), 1);
  return out;
}

bool is_cube_free(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("is_cube_free: n must be nonzero");
  const auto f = factorize(n);
  return std::all_of(f.begin(), f.end(), [](const auto& pe) { return pe.second < 3; });
}

bool is_square_free(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("is_square_free: n must be nonzero");
  const auto f = factorize(n);
  return std::all_of(f.begin(), f.end(), [](const auto& pe) { return pe.second < 2; });
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mod(const Integer& a, std::int64_t m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::invalid_argument("inverse_mod: not invertible");
  return mod(old_s, m);
}

int legendre(std::int64_t a, std::int64_t p) {
  const std::int64_t r = mod(a, p);
  if (r == 0) return 0;
  const auto e = pow_mod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 2),
                         static_cast<std::uint64_t>(p));
  return e == 1 ? 1 : -1;
}

std::int64_t sqrt_mod(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) throw std::invalid_argument("sqrt_mod: not a quadratic residue");
  const auto up = static_cast<std::uint64_t>(p);
  if (p % 4 == 3) return static_cast<std::int64_t>(pow_mod(a, (up + 1) / 4, up));
  std::uint64_t q = up - 1;
  int s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  std::uint64_t z = 2;
  while (legendre(static_cast<std::int64_t>(z), p) != -1) ++z;
  std::uint64_t c = pow_mod(z, q, up);
  std::uint64_t x = pow_mod(a, (q + 1) / 2, up);
  std::uint64_t t = pow_mod(a, q, up);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, up);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, up);
    x = mul_mod(x, b, up);
    c = mul_mod(b, b, up);
    t = mul_mod(t, c, up);
    m = i;
  }
  return static_cast<std::int64_t>(x);
}

bool cubic_residue_test(std::int64_t c, std::int64_t p) {
  if (p < 2) throw std::invalid_argument("cubic_residue_test: modulus must be prime");
  const std::int64_t r = mod(c, p);
  if (r == 0) throw std::invalid_argument("cubic_residue_test: p divides c");
  if (p % 3 != 1) return true;
  return pow_mod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 3),
                 static_cast<std::uint64_t>(p)) == 1;
}

std::int64_t crt(std::span<const Congruence> system) {
  Integer x = 0;
  Integer modulus = 1;
  for (const auto& [r, m] : system) {
    if (m < 1) throw std::invalid_argument("crt: moduli must be positive");
    const auto mod_small = static_cast<std::int64_t>(modulus % m);
    if (gcd(mod_small, m) != 1) throw std::invalid_argument("crt: moduli are not pairwise coprime");
    // x + modulus * k = r (mod m)
    const std::int64_t diff = mod(Integer(r) - x, m);
    const std::int64_t k = m == 1 ? 0 : static_cast<std::int64_t>(mul_mod(
        static_cast<std::uint64_t>(diff), static_cast<std::uint64_t>(inverse_mod(mod_small, m)),
        static_cast<std::uint64_t>(m)));
    x += modulus * k;
    modulus *= m;
  }
  if (modulus > Integer(INT64_MAX)) throw std::invalid_argument("crt: combined modulus exceeds 63 bits");
  return static_cast<std::int64_t>(x);
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Integer& n, Integer* root) {
  if (n < 0) return false;
  const Integer r = boost::multiprecision::sqrt(n);
  if (r * r != n) return false;
  if (root != nullptr) *root = r;
  return true;
}

namespace {

Integer icbrt_abs(const Integer& n) {
  // floor(n^(1/3)) for n >= 0, by Newton iteration from a double seed.
  if (n < 2) return n;
  Integer x = static_cast<Integer>(std::cbrt(static_cast<double>(n))) + 2;
  while (true) {
    const Integer y = (2 * x + n / (x * x)) / 3;
    if (y >= x) break;
    x = y;
  }
  while (x * x * x > n) --x;
  while ((x + 1) * (x + 1) * (x + 1) <= n) ++x;
  return x;
}

}  // namespace

bool is_perfect_cube(const Integer& n, Integer* root) {
  const Integer r = icbrt_abs(abs(n));
  if (r * r * r != abs(n)) return false;
  if (root != nullptr) *root = n < 0 ? Integer(-r) : r;
  return true;
}

bool is_perfect_cube(std::int64_t n, std::int64_t* root) {
  Integer r;
  if (!is_perfect_cube(Integer(n), &r)) return false;
  if (root != nullptr) *root = static_cast<std::int64_t>(r);
  return true;
}

SixthPowerSplit strip_sixth_powers(const Integer& a) {
  if (a == 0) throw std::invalid_argument("strip_sixth_powers: zero");
  SixthPowerSplit out{a, 1};
  // Any prime q with q^6 | core satisfies q^6 <= |core|.
  for (std::int64_t q = 2;; q += (q == 2 ? 1 : 2)) {
    const Integer q6 = Integer(q) * q * q * q * q * q;
    if (q6 > abs(out.core)) break;
    while (out.core % q6 == 0) {
      out.core /= q6;
      out.scale *= q;
    }
  }
  return out;
}

int valuation(const Integer& n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("valuation: zero");
  Integer m = abs(n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

}  // namespace mh10::arith
