#include "mordellh10/lseries.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mordellh10/cubesum.hpp"

namespace mh10::lseries {

using mordell::MordellCurve;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string cap_message(const MordellCurve& curve, std::int64_t cap) {
  std::ostringstream os;
  os << "conductor of " << curve.label() << " exceeds cap " << cap;
  return os.str();
}

bool bad_at(const MordellCurve& curve, std::int64_t p) {
  if (p == 2 || p == 3) return !mordell::local_info(curve, p).good();
  return curve.core() % p == 0;
}

// Theta series g(t) = sum a_n exp(-2 pi n t / sqrt N).
long double theta(const std::vector<std::int32_t>& an, double sqrt_n, double t) {
  long double sum = 0;
  const long double step = kTwoPi * t / sqrt_n;
  for (std::size_t n = 1; n < an.size(); ++n) {
    if (an[n] == 0) continue;
    sum += static_cast<long double>(an[n]) * std::exp(-step * static_cast<long double>(n));
  }
  return sum;
}

// Bound for sum_{n > M} n q^n with q = exp(-2 pi t / sqrt N).
double weighted_tail(std::int64_t conductor, std::int64_t terms, double t) {
  const double q = std::exp(-kTwoPi * t / std::sqrt(static_cast<double>(conductor)));
  const double m = static_cast<double>(terms);
  return std::pow(q, m + 1) * ((m + 1) - m * q) / ((1 - q) * (1 - q));
}

std::int64_t theta_truncation(std::int64_t conductor, double t, double tol, std::int64_t cap) {
  const double sqrt_n = std::sqrt(static_cast<double>(conductor));
  auto m = static_cast<std::int64_t>(std::ceil(2 * sqrt_n));
  while (weighted_tail(conductor, m, t) >= tol) {
    m = m + m / 8 + 1;
    if (m > cap) throw NumericalError("conductor too large for desk scale: theta series exceeds term cap");
  }
  return m;
}

void best_rational(double ratio, AnalyticData& out) {
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t den = 1; den <= 36; ++den) {
    const auto num = static_cast<std::int64_t>(std::llround(ratio * static_cast<double>(den)));
    const double err = std::abs(ratio - static_cast<double>(num) / static_cast<double>(den));
    if (err < best - 1e-15) {
      best = err;
      out.ratio_num = num;
      out.ratio_den = den;
    }
  }
  out.ratio_error = best;
}

}  // namespace

std::vector<std::int32_t> dirichlet_coefficients(const MordellCurve& curve, std::int64_t terms, ApCache* cache) {
  if (terms < 1) throw std::invalid_argument("dirichlet_coefficients: need at least one term");
  const auto spf = arith::smallest_prime_factors(terms);
  std::vector<std::int32_t> an(static_cast<std::size_t>(terms) + 1, 0);
  an[1] = 1;
  std::map<std::int64_t, std::int64_t> fresh;
  const auto known = cache != nullptr ? cache->entries(curve.core()) : std::map<std::int64_t, std::int64_t>{};
  for (std::int64_t p = 2; p <= terms; ++p) {
    if (spf[p] != p) continue;
    std::int64_t a_p;
    if (auto it = known.find(p); it != known.end()) {
      a_p = it->second;
    } else {
      a_p = mordell::ap_fast(curve, p);
      fresh.emplace(p, a_p);
    }
    const bool bad = bad_at(curve, p);
    // Prime powers: a_{p^(k+1)} = a_p a_{p^k} - p a_{p^(k-1)} for good p.
    std::int64_t prev = 1, cur = a_p;
    for (std::int64_t pk = p;; pk *= p) {
      an[pk] = static_cast<std::int32_t>(cur);
      if (pk > terms / p) break;
      const std::int64_t next = bad ? cur * a_p : a_p * cur - p * prev;
      prev = cur;
      cur = next;
    }
  }
  if (cache != nullptr) cache->insert_all(curve.core(), fresh);
  for (std::int64_t n = 2; n <= terms; ++n) {
    const std::int64_t p = spf[n];
    std::int64_t m = n, pk = 1;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m != 1) an[n] = an[pk] * an[m];
  }
  return an;
}

double exp_integral_e1(double x) {
  if (!(x > 0)) throw std::invalid_argument("exp_integral_e1: x must be positive");
  constexpr double kEps = 1e-16;
  if (x < 2.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
  }
  // Modified Lentz evaluation of the continued fraction.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0, c = 1.0 / kTiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 10'000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x);
}

double tail_bound(std::int64_t conductor, std::int64_t terms) {
  const double q = std::exp(-kTwoPi / std::sqrt(static_cast<double>(conductor)));
  return 2.0 * std::pow(q, static_cast<double>(terms) + 1) / (1.0 - q);
}

std::int64_t truncation_for(std::int64_t conductor, double tol) {
  const double sqrt_n = std::sqrt(static_cast<double>(conductor));
  const double q = std::exp(-kTwoPi / sqrt_n);
  auto m = static_cast<std::int64_t>(std::ceil(sqrt_n / kTwoPi * std::log(20.0 / (tol * (1.0 - q)))));
  m = std::max(m, static_cast<std::int64_t>(std::ceil(2 * sqrt_n)));
  while (m > 1 && tail_bound(conductor, m - 1) < tol / 10) --m;
  while (tail_bound(conductor, m) >= tol / 10) ++m;
  return std::max(m, static_cast<std::int64_t>(std::ceil(2 * sqrt_n)));
}

std::optional<int> closed_form_root_number(const MordellCurve& curve) {
  const Integer& a = curve.a();
  if (a % 432 != 0) return std::nullopt;
  Integer d;
  if (!arith::is_perfect_cube(Integer(a / -432), &d)) return std::nullopt;
  if (d == 0 || abs(d) > Integer(INT64_MAX)) return std::nullopt;
  const auto D = static_cast<std::int64_t>(d);
  if (!arith::is_square_free(D)) return std::nullopt;
  const std::int64_t m = D < 0 ? -D : D;
  // -1 exactly for +-(3k + 2) and +-3(3k + 2).
  const std::int64_t core = m % 3 == 0 ? m / 3 : m;
  return core % 3 == 2 ? -1 : 1;
}

namespace {

struct SignFit {
  int eps = 0;  // 0: ambiguous
  bool consistent = false;
  double residual = 0, rejected = 0;
};

SignFit fit_sign(const std::vector<std::int32_t>& an, std::int64_t conductor, std::int64_t terms, double t,
                 double tol) {
  const double sqrt_n = std::sqrt(static_cast<double>(conductor));
  const long double g_t = theta(an, sqrt_n, t);
  const long double g_inv = theta(an, sqrt_n, 1.0 / t);
  const long double t2 = static_cast<long double>(t) * t;
  const double plus = static_cast<double>(std::abs(g_inv - t2 * g_t));
  const double minus = static_cast<double>(std::abs(g_inv + t2 * g_t));
  const double scale = static_cast<double>(std::abs(g_inv) + t2 * std::abs(g_t));
  const double truncation = weighted_tail(conductor, terms, 1.0 / t) + t * t * weighted_tail(conductor, terms, t);
  const double accept = 10 * truncation + 1e-9 * scale + tol * 1e-3;

  SignFit fit;
  const bool plus_ok = plus <= accept, minus_ok = minus <= accept;
  fit.consistent = plus_ok || minus_ok;
  if (plus_ok && !minus_ok) {
    fit.eps = 1;
    fit.residual = plus / std::max(scale, 1e-300);
    fit.rejected = minus / std::max(scale, 1e-300);
  } else if (minus_ok && !plus_ok) {
    fit.eps = -1;
    fit.residual = minus / std::max(scale, 1e-300);
    fit.rejected = plus / std::max(scale, 1e-300);
  } else {
    fit.residual = std::min(plus, minus) / std::max(scale, 1e-300);
    fit.rejected = std::max(plus, minus) / std::max(scale, 1e-300);
  }
  return fit;
}

RootNumberResult root_number_for(const MordellCurve& curve, std::int64_t conductor, const LSeriesConfig& config) {
  constexpr double kT[2] = {1.1, 1.2};
  const std::int64_t terms = theta_truncation(conductor, 1.0 / kT[1], config.tol * 1e-3, config.max_terms);
  const auto an = dirichlet_coefficients(curve, terms, config.cache);
  RootNumberResult out;
  int chosen = 0;
  for (int i = 0; i < 2; ++i) {
    const SignFit fit = fit_sign(an, conductor, terms, kT[i], config.tol);
    if (!fit.consistent) {
      throw NumericalError("root number: functional equation fails for both signs at t = " + std::to_string(kT[i]) +
                           " (" + curve.label() + ", N = " + std::to_string(conductor) + ")");
    }
    out.residual[i] = fit.residual;
    out.rejected_residual[i] = fit.rejected;
    if (fit.eps == 0) continue;
    if (chosen != 0 && chosen != fit.eps) {
      throw NumericalError("root number: inconsistent sign across t = 1.1 and t = 1.2 for " + curve.label());
    }
    chosen = fit.eps;
  }
  if (chosen == 0) throw NumericalError("root number: sign undetermined at both t values for " + curve.label());
  out.eps = chosen;
  out.closed_form = closed_form_root_number(curve);
  if (out.closed_form && *out.closed_form != out.eps) {
    throw NumericalError("root number: numerical sign disagrees with the closed form for " + curve.label());
  }
  return out;
}

std::int64_t require_conductor(const MordellCurve& curve, const LSeriesConfig& config) {
  const auto n = mordell::conductor_capped(curve, config.conductor_cap);
  if (!n) throw NumericalError(cap_message(curve, config.conductor_cap));
  return *n;
}

}  // namespace

RootNumberResult root_number(const MordellCurve& curve, const LSeriesConfig& config) {
  return root_number_for(curve, require_conductor(curve, config), config);
}

LSeriesJob prepare(const MordellCurve& curve, const LSeriesConfig& config) {
  if (!(config.tol > 0)) throw std::invalid_argument("prepare: tolerance must be positive");
  LSeriesJob job{curve, require_conductor(curve, config), 0, 0, 0.0};
  job.eps = root_number_for(curve, job.conductor, config).eps;
  job.terms = truncation_for(job.conductor, config.tol);
  if (job.terms > config.max_terms) {
    throw NumericalError("conductor too large for desk scale: " + std::to_string(job.terms) + " terms needed");
  }
  job.tail_bound = tail_bound(job.conductor, job.terms);
  return job;
}

LValue l_value(const LSeriesJob& job, ApCache* cache) {
  const double sqrt_n = std::sqrt(static_cast<double>(job.conductor));
  LValue out;
  if (job.eps == 1) {
    const auto an = dirichlet_coefficients(job.curve, job.terms, cache);
    long double sum = 0;
    for (std::int64_t n = 1; n <= job.terms; ++n) {
      if (an[n] == 0) continue;
      const long double x = kTwoPi * static_cast<long double>(n) / sqrt_n;
      sum += static_cast<long double>(an[n]) / static_cast<long double>(n) * std::exp(-x);
    }
    out.value = static_cast<double>(2 * sum);
    out.tail_bound = job.tail_bound;
    out.terms = job.terms;
    return out;
  }
  // L(1) = sum (a_n/n) (exp(-x_n / A) + eps exp(-x_n A)) for any A > 0.
  constexpr double kSplit = 1.2;
  const std::int64_t terms =
      static_cast<std::int64_t>(std::ceil(static_cast<double>(job.terms) * kSplit)) + 1;
  const auto an = dirichlet_coefficients(job.curve, terms, cache);
  long double sum = 0;
  for (std::int64_t n = 1; n <= terms; ++n) {
    if (an[n] == 0) continue;
    const long double x = kTwoPi * static_cast<long double>(n) / sqrt_n;
    sum += static_cast<long double>(an[n]) / static_cast<long double>(n) *
           (std::exp(-x / kSplit) + static_cast<long double>(job.eps) * std::exp(-x * kSplit));
  }
  out.value = static_cast<double>(sum);
  const auto stretched = static_cast<std::int64_t>(std::ceil(static_cast<double>(job.conductor) * kSplit * kSplit));
  out.tail_bound = (tail_bound(stretched, terms) + job.tail_bound) / 2.0;
  out.terms = terms;
  return out;
}

LValue l_value(const MordellCurve& curve, const LSeriesConfig& config) {
  return l_value(prepare(curve, config), config.cache);
}

LValue l_derivative(const LSeriesJob& job, ApCache* cache) {
  const double sqrt_n = std::sqrt(static_cast<double>(job.conductor));
  const auto an = dirichlet_coefficients(job.curve, job.terms, cache);
  long double sum = 0;
  for (std::int64_t n = 1; n <= job.terms; ++n) {
    if (an[n] == 0) continue;
    const double x = kTwoPi * static_cast<double>(n) / sqrt_n;
    sum += static_cast<long double>(an[n]) / static_cast<long double>(n) * exp_integral_e1(x);
  }
  LValue out;
  out.value = static_cast<double>(2 * sum);
  out.tail_bound = job.tail_bound / (kTwoPi * static_cast<double>(job.terms + 1) / sqrt_n);
  out.terms = job.terms;
  return out;
}

LValue l_derivative(const MordellCurve& curve, const LSeriesConfig& config) {
  return l_derivative(prepare(curve, config), config.cache);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ZeroByLValue: return "ZeroByLValue";
    case Verdict::PositiveByPoint: return "PositiveByPoint";
    case Verdict::OneByGZK: return "OneByGZK";
    case Verdict::ZeroByCongruence: return "ZeroByCongruence";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

double nonvanishing_threshold(double tail, double omega) { return std::max(10.0 * tail, 1e-3 * omega); }

RankEvidence rank_evidence(const MordellCurve& curve, const RankConfig& config) {
  RankEvidence ev;
  ev.curve = curve;

  if (config.use_congruence) {
    if (const auto d = cubesum::cube_sum_parameter(curve)) {
      const auto verdict = cubesum::classify_by_congruence(*d);
      if (verdict.status == cubesum::Status::NotCubeSum) {
        ev.verdict = Verdict::ZeroByCongruence;
        ev.rule = cubesum::to_string(verdict.rule);
        ev.note = verdict.detail;
        return ev;
      }
    }
  }

  if (auto pt = mordell::point_search(curve, config.height_bound)) {
    ev.verdict = Verdict::PositiveByPoint;
    ev.point = std::move(pt);
    return ev;
  }

  ApCache local;
  LSeriesConfig lconf = config.lseries();
  if (lconf.cache == nullptr) lconf.cache = &local;
  try {
    const LSeriesJob job = prepare(curve, lconf);
    AnalyticData data;
    data.conductor = job.conductor;
    data.eps = job.eps;
    data.omega = mordell::real_period(curve);
    const LValue value = job.eps == 1 ? l_value(job, lconf.cache) : l_derivative(job, lconf.cache);
    data.terms = value.terms;
    data.tail_bound = value.tail_bound;
    data.value = value.value;
    data.ratio = value.value / data.omega;
    best_rational(data.ratio, data);
    ev.analytic = data;
    const bool nonzero = std::abs(value.value) > nonvanishing_threshold(value.tail_bound, data.omega);
    if (nonzero) {
      ev.verdict = job.eps == 1 ? Verdict::ZeroByLValue : Verdict::OneByGZK;
    } else if (config.escalated_height_bound > config.height_bound) {
      if (auto pt = mordell::point_search(curve, config.escalated_height_bound)) {
        ev.verdict = Verdict::PositiveByPoint;
        ev.point = std::move(pt);
        return ev;
      }
    }
    if (!nonzero) {
      ev.verdict = Verdict::Undetermined;
      ev.note = job.eps == 1 ? "L(1) vanishes numerically and no point was found"
                             : "L'(1) vanishes numerically and no point was found";
    }
  } catch (const NumericalError& err) {
    ev.verdict = Verdict::Undetermined;
    ev.note = err.what();
  }
  return ev;
}

}  // namespace mh10::lseries
