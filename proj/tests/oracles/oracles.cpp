#include "oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <map>

namespace oracle {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_upto(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= limit; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  n = std::llabs(n);
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  return out;
}

bool cube_free(std::int64_t n) {
  for (const auto& [p, e] : factor(n)) {
    if (e >= 3) return false;
  }
  return true;
}

bool square_free(std::int64_t n) {
  for (const auto& [p, e] : factor(n)) {
    if (e >= 2) return false;
  }
  return true;
}

bool is_cube_mod(std::int64_t c, std::int64_t p) {
  const std::int64_t r = ((c % p) + p) % p;
  for (std::int64_t x = 1; x < p; ++x) {
    if (x * x % p * x % p == r) return true;
  }
  return false;
}

std::int64_t count_points(std::int64_t a, std::int64_t p) {
  // roots[r] = #{y : y^2 = r}, then one pass over x.
  std::vector<std::int64_t> roots(p, 0);
  for (std::int64_t y = 0; y < p; ++y) ++roots[y * y % p];
  const std::int64_t ar = ((a % p) + p) % p;
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < p; ++x) n += roots[(x * x % p * x + ar) % p];
  return n;
}

std::int64_t trace(std::int64_t a, std::int64_t p) { return p + 1 - count_points(a, p); }

double omega(double a) {
  if (a > 0) {
    return std::pow(a, -1.0 / 6.0) * (std::beta(1.0 / 3.0, 1.0 / 6.0) + std::beta(1.0 / 3.0, 0.5)) / 3.0;
  }
  return std::pow(-a, -1.0 / 6.0) * std::beta(1.0 / 6.0, 0.5) / 3.0;
}

double e1(double x) {
  // E1(x) = int_0^inf e^(-x-w) / (x + w) dw, split at w = 1 for resolution.
  auto simpson = [x](double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = 0;
    for (int i = 0; i <= n; ++i) {
      const double w = lo + i * h;
      const double f = std::exp(-x - w) / (x + w);
      s += f * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
    }
    return s * h / 3;
  };
  return simpson(0, 1, 200000) + simpson(1, 60, 200000);
}

Point add(const Point& p, const Point& q, const Rat& a) {
  (void)a;
  if (p.inf) return q;
  if (q.inf) return p;
  Rat lambda;
  if (p.x == q.x) {
    if (p.y + q.y == 0) return {};
    lambda = 3 * p.x * p.x / (2 * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  Point r;
  r.inf = false;
  r.x = lambda * lambda - p.x - q.x;
  r.y = lambda * (p.x - r.x) - p.y;
  return r;
}

int order(const Point& p, const Rat& a, int bound) {
  Point acc = p;
  for (int k = 1; k <= bound; ++k) {
    if (acc.inf) return k;
    acc = add(acc, p, a);
  }
  return 0;
}

std::vector<Point> torsion_points(std::int64_t a) {
  // Integral torsion points have y = 0 or y^2 | 432 a^2.
  const Int bound = Int(432) * a * a;
  std::vector<Point> out;
  auto try_y = [&](const Int& y) {
    const Int c = y * y - a;
    // integer cube root by search
    Int lo = -2'000'000, hi = 2'000'000;
    while (lo < hi) {
      const Int mid = lo + (hi - lo) / 2;
      if (mid * mid * mid < c) lo = mid + 1; else hi = mid;
    }
    if (lo * lo * lo != c) return;
    Point pt;
    pt.inf = false;
    pt.x = Rat(lo);
    pt.y = Rat(y);
    if (order(pt, Rat(a), 12) != 0) out.push_back(pt);
  };
  try_y(0);
  for (Int y = 1; y * y <= bound; ++y) {
    if (bound % (y * y) != 0) continue;
    try_y(y);
    try_y(-y);
  }
  return out;
}

std::optional<std::pair<Rat, Rat>> cube_sum(std::int64_t D, std::int64_t bound) {
  for (std::int64_t q = 1; q <= bound; ++q) {
    const Int target = Int(D) * q * q * q;
    std::map<Int, std::int64_t> cubes;
    for (std::int64_t v = -q * bound; v <= q * bound; ++v) cubes[Int(v) * v * v] = v;
    for (std::int64_t u = -q * bound; u <= q * bound; ++u) {
      const auto it = cubes.find(target - Int(u) * u * u);
      if (it != cubes.end()) return std::make_pair(Rat(Int(u), Int(q)), Rat(Int(it->second), Int(q)));
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> coefficients(std::int64_t a, std::int64_t terms,
                                       const std::vector<std::pair<std::int64_t, std::int64_t>>& bad) {
  std::map<std::int64_t, std::int64_t> bad_ap(bad.begin(), bad.end());
  std::vector<std::int64_t> an(terms + 1, 0);
  an[1] = 1;
  // a_n from prime powers, multiplicatively, by factoring each n.
  std::map<std::int64_t, std::vector<std::int64_t>> powers;
  for (std::int64_t n = 2; n <= terms; ++n) {
    std::int64_t value = 1;
    for (const auto& [p, e] : factor(n)) {
      auto& pw = powers[p];
      if (pw.empty()) {
        const bool is_bad = bad_ap.count(p) > 0;
        const std::int64_t ap = is_bad ? bad_ap[p] : trace(a, p);
        pw = {1, ap};
        while (static_cast<int>(pw.size()) <= 40) {
          const std::size_t k = pw.size();
          pw.push_back(is_bad ? pw[k - 1] * ap : ap * pw[k - 1] - p * pw[k - 2]);
        }
      }
      value *= pw[e];
    }
    an[n] = value;
  }
  return an;
}

double theta_residual(const std::vector<std::int64_t>& an, double conductor, int eps, double t) {
  auto g = [&](double s) {
    long double sum = 0;
    for (std::size_t n = 1; n < an.size(); ++n) {
      sum += an[n] * std::exp(-2 * M_PI * n * s / std::sqrt(conductor));
    }
    return sum;
  };
  const long double lhs = g(1 / t), rhs = eps * t * t * g(t);
  return static_cast<double>(std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs)));
}

}  // namespace oracle
