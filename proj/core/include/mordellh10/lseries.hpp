#pragma once

// L(E, s) near s = 1 for Mordell curves: root number by the theta-function
// functional equation, L(1) and L'(1) by rapidly converging series, and the
// rank-evidence pipeline built on them.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mordellh10/ap_cache.hpp"
#include "mordellh10/mordell.hpp"

namespace mh10::lseries {

/// Raised when the numerics cannot be trusted: inconsistent functional
/// equation, truncation beyond the term cap, conductor above the cap.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LSeriesConfig {
  double tol = 1e-6;
  std::int64_t max_terms = 10'000'000;
  std::int64_t conductor_cap = 1'000'000'000'000;
  ApCache* cache = nullptr;
};

struct LSeriesJob {
  mordell::MordellCurve curve;
  std::int64_t conductor = 0;
  int eps = 0;
  std::int64_t terms = 0;   // M
  double tail_bound = 0.0;  // bound on the truncated part of the L(1) / L'(1) sums
};

/// Dirichlet coefficients a_1 .. a_M (index 0 unused).
std::vector<std::int32_t> dirichlet_coefficients(const mordell::MordellCurve& curve, std::int64_t terms,
                                                 ApCache* cache = nullptr);

/// Exponential integral E1(x) = int_1^inf e^(-x t) / t dt for x > 0. Series
/// below 2, continued fraction above.
double exp_integral_e1(double x);

/// Upper bound for 2 * sum_{n > M} e^(-2 pi n / sqrt(N)), i.e. the L(1) tail
/// under |a_n| <= n; the L'(1) tail is this divided by 2 pi (M + 1) / sqrt(N).
double tail_bound(std::int64_t conductor, std::int64_t terms);

/// Smallest admissible truncation: M >= 2 sqrt(N) and tail_bound < tol / 10.
std::int64_t truncation_for(std::int64_t conductor, double tol);

struct RootNumberResult {
  int eps = 0;
  /// |g(1/t) - eps t^2 g(t)| relative residual at t = 1.1 and 1.2 for the
  /// chosen sign, and for the rejected sign.
  double residual[2] = {0, 0};
  double rejected_residual[2] = {0, 0};
  /// closed_form_root_number, where the family applies.
  std::optional<int> closed_form;
};

/// Root number of E by fitting the theta functional equation at two points.
/// Throws NumericalError when the fit is inconsistent.
RootNumberResult root_number(const mordell::MordellCurve& curve, const LSeriesConfig& config = {});

/// Root number of E_{-432 D^3} for square-free D, the quadratic twist of
/// E_{-432} by D: -1 for D = +-(3k+2) and +-3(3k+2), +1 otherwise. nullopt
/// off that family.
std::optional<int> closed_form_root_number(const mordell::MordellCurve& curve);

/// Builds the job: conductor (capped), root number and truncation.
LSeriesJob prepare(const mordell::MordellCurve& curve, const LSeriesConfig& config = {});

struct LValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms = 0;
};

/// L(E, 1). For eps = +1 this is 2 sum (a_n/n) e^(-2 pi n / sqrt N); for
/// eps = -1 the unsymmetrised form at split point 1.2 is returned, which is
/// zero up to truncation when the sign is right.
LValue l_value(const LSeriesJob& job, ApCache* cache = nullptr);
LValue l_value(const mordell::MordellCurve& curve, const LSeriesConfig& config = {});

/// L'(E, 1) = 2 sum (a_n/n) E1(2 pi n / sqrt N), meaningful for eps = -1.
LValue l_derivative(const LSeriesJob& job, ApCache* cache = nullptr);
LValue l_derivative(const mordell::MordellCurve& curve, const LSeriesConfig& config = {});

enum class Verdict { ZeroByLValue, PositiveByPoint, OneByGZK, ZeroByCongruence, Undetermined };
std::string to_string(Verdict v);

struct AnalyticData {
  std::int64_t conductor = 0;
  int eps = 0;
  std::int64_t terms = 0;
  double tail_bound = 0.0;
  double value = 0.0;  // L(1) or L'(1)
  double omega = 0.0;
  double ratio = 0.0;  // value / omega
  /// Best rational approximation of L(1)/Omega with denominator <= 36 and its
  /// distance (audit only).
  std::int64_t ratio_num = 0;
  std::int64_t ratio_den = 1;
  double ratio_error = 0.0;
};

struct RankEvidence {
  mordell::MordellCurve curve{1};
  Verdict verdict = Verdict::Undetermined;
  std::optional<mordell::RationalPoint> point;  // PositiveByPoint
  std::optional<AnalyticData> analytic;         // ZeroByLValue, OneByGZK
  std::string rule;                             // ZeroByCongruence
  std::string note;                             // why Undetermined

  bool positive() const { return verdict == Verdict::PositiveByPoint || verdict == Verdict::OneByGZK; }
  bool zero() const { return verdict == Verdict::ZeroByLValue || verdict == Verdict::ZeroByCongruence; }
};

struct RankConfig {
  std::int64_t height_bound = 10'000;
  /// Second point search, run only when the analytic side vanishes.
  std::int64_t escalated_height_bound = 1'000'000;
  double tol = 1e-6;
  std::int64_t conductor_cap = 1'000'000'000'000;
  std::int64_t max_terms = 10'000'000;
  bool use_congruence = true;
  ApCache* cache = nullptr;

  LSeriesConfig lseries() const { return {tol, max_terms, conductor_cap, cache}; }
};

/// Nonvanishing threshold: max(10 * tail_bound, 1e-3 * omega).
double nonvanishing_threshold(double tail, double omega);

/// congruence rule -> point search -> L(1) (eps = +1) -> L'(1) (eps = -1),
/// with a wider point search if the relevant value vanishes.
RankEvidence rank_evidence(const mordell::MordellCurve& curve, const RankConfig& config = {});

}  // namespace mh10::lseries
