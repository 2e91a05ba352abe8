#include "mordellh10/h10.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mh10::h10 {

using lseries::RankEvidence;
using lseries::Verdict;
using mordell::MordellCurve;
using nlohmann::json;

namespace {

json integer_json(const Integer& n) {
  if (n >= Integer(INT64_MIN) && n <= Integer(INT64_MAX)) return static_cast<std::int64_t>(n);
  return n.str();
}

std::string rational_text(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string cube_root_field(std::int64_t D) { return "Q(zeta_3, cbrt(" + std::to_string(D) + "))"; }

std::string rank_claim(const RankEvidence& ev) {
  const std::string label = ev.curve.label();
  switch (ev.verdict) {
    case Verdict::PositiveByPoint: return "rank " + label + "(Q) >= 1";
    case Verdict::OneByGZK: return "rank " + label + "(Q) = 1";
    case Verdict::ZeroByLValue:
    case Verdict::ZeroByCongruence: return "rank " + label + "(Q) = 0";
    case Verdict::Undetermined: break;
  }
  return "rank " + label + "(Q) undetermined";
}

ChainLink evidence_link(const RankEvidence& ev) { return {rank_claim(ev), lseries::to_string(ev.verdict), to_json(ev)}; }

bool prime_above_three(std::int64_t p) { return p > 3 && arith::is_prime(p); }

std::int64_t least_non_cube(std::int64_t p) {
  for (std::int64_t b = 2; b < p; ++b) {
    if (!arith::cubic_residue_test(b, p)) return b;
  }
  throw std::logic_error("least_non_cube: every residue is a cube");
}

CertifyOutcome from_lemma1(Lemma1Outcome outcome, ChainLink construction) {
  CertifyOutcome out;
  if (outcome.certificate) {
    auto cert = std::move(*outcome.certificate);
    cert.chain.insert(cert.chain.begin(), std::move(construction));
    out.certificate = std::move(cert);
  } else if (outcome.no_decision) {
    out.no_decision = std::move(outcome.no_decision);
  } else {
    out.no_decision = NoDecision{"twist triple for a = " + outcome.triple.a.str() +
                                     " is not exactly-one-positive; the construction does not apply",
                                 std::nullopt};
  }
  return out;
}

}  // namespace

json to_json(const RankEvidence& ev) {
  json j = {{"curve", ev.curve.label()}, {"a", integer_json(ev.curve.a())}, {"verdict", lseries::to_string(ev.verdict)}};
  if (ev.point) j["point"] = {{"x", rational_text(ev.point->x())}, {"y", rational_text(ev.point->y())}};
  if (ev.analytic) {
    const auto& d = *ev.analytic;
    j["analytic"] = {{"conductor", d.conductor}, {"root_number", d.eps},  {"terms", d.terms},
                     {"value", d.value},         {"tail_bound", d.tail_bound}, {"omega", d.omega},
                     {"ratio", d.ratio},         {"ratio_approx", std::to_string(d.ratio_num) + "/" + std::to_string(d.ratio_den)}};
  }
  if (!ev.rule.empty()) j["rule"] = ev.rule;
  if (!ev.note.empty()) j["note"] = ev.note;
  return j;
}

json to_json(const H10Certificate& cert) {
  json field = {{"type", cert.field.type == FieldType::Degree6 ? "degree6" : "degree12"}, {"D", cert.field.D}};
  field["p"] = cert.field.p ? json(*cert.field.p) : json(nullptr);
  json chain = json::array();
  for (const auto& link : cert.chain) chain.push_back({{"claim", link.claim}, {"rule", link.rule}, {"data", link.data}});
  return {{"field", field}, {"issued", cert.issued}, {"chain", chain}, {"version", 1}};
}

std::array<MordellCurve, 3> TwistTriple::curves() const {
  const Integer d2 = Integer(D) * D;
  return {MordellCurve(a), MordellCurve(a * d2), MordellCurve(a * d2 * d2)};
}

int TwistTriple::positive_count() const {
  return static_cast<int>(std::count_if(evidence.begin(), evidence.end(), [](const auto& e) { return e.positive(); }));
}

int TwistTriple::undetermined_count() const {
  return static_cast<int>(std::count_if(evidence.begin(), evidence.end(),
                                        [](const auto& e) { return e.verdict == Verdict::Undetermined; }));
}

bool TwistTriple::exactly_one_positive() const {
  int zero = 0;
  for (const auto& e : evidence) zero += e.zero() ? 1 : 0;
  return positive_count() == 1 && zero == 2;
}

std::optional<int> TwistTriple::positive_index() const {
  if (!exactly_one_positive()) return std::nullopt;
  for (int i = 0; i < 3; ++i) {
    if (evidence[i].positive()) return i;
  }
  return std::nullopt;
}

Lemma1Outcome lemma1_check(const Integer& a, std::int64_t D, const lseries::RankConfig& config) {
  if (a == 0) throw std::invalid_argument("lemma1_check: a must be nonzero");
  if (D <= 1 || !arith::is_cube_free(D)) throw std::invalid_argument("lemma1_check: D must be cube-free and > 1");
  Lemma1Outcome out;
  out.triple.a = a;
  out.triple.D = D;
  const auto curves = out.triple.curves();
  for (int i = 0; i < 3; ++i) out.triple.evidence[i] = lseries::rank_evidence(curves[i], config);

  const auto& t = out.triple;
  if (t.exactly_one_positive()) {
    const int k = *t.positive_index();
    const std::string field = cube_root_field(D);
    H10Certificate cert;
    cert.field = {FieldType::Degree6, D, std::nullopt};
    for (const auto& ev : t.evidence) cert.chain.push_back(evidence_link(ev));
    cert.chain.push_back({"rank E(K) = 2 rank E(Q) for each of " + curves[0].label() + ", " + curves[1].label() + ", " +
                              curves[2].label() + " over K = Q(zeta_3)",
                          "cm-rank-doubling",
                          {{"K", "Q(zeta_3)"}, {"isogeny", curves[k].label() + " -> " + mordell::isogenous_constant(curves[k]).label()}}});
    cert.chain.push_back({"rank " + curves[0].label() + "(L) = sum of the three ranks over K = rank " + curves[k].label() +
                              "(K) > 0",
                          "cubic-twist-rank-sum",
                          {{"L", field}, {"positive_curve", curves[k].label()}, {"zero_curves", json::array({curves[(k + 1) % 3].label(), curves[(k + 2) % 3].label()})}}});
    cert.chain.push_back({"Hilbert's tenth problem is unsolvable over the ring of integers of " + field,
                          "shlapentokh-transfer",
                          {{"F", "Q(zeta_3)"}, {"L", field}, {"rank_equality", "rank E(L) = rank E(F) > 0"}}});
    cert.issued = true;
    out.certificate = std::move(cert);
    return out;
  }
  if (t.positive_count() < 2 && t.undetermined_count() > 0) {
    for (const auto& ev : t.evidence) {
      if (ev.verdict != Verdict::Undetermined) continue;
      out.no_decision = NoDecision{"rank evidence undetermined for " + ev.curve.label() + ": " + ev.note, ev.curve};
      break;
    }
  }
  return out;
}

CertifyOutcome certify_prime_degree6(std::int64_t p, const CertifyConfig& config) {
  if (!prime_above_three(p)) throw std::invalid_argument("certify_prime_degree6: p must be a prime > 3");
  const int r = static_cast<int>(p % 9);

  if (r == 2 || r == 5) {
    // E_{-432*81} has rank 1; 9p and 9p^2 are not cube sums.
    const Integer a = Integer(-432) * 81;
    ChainLink construction{"p = " + std::to_string(r) + " (mod 9): base curve E_{-432*81}, twists by 9p and 9p^2",
                           "prime-class-2-5",
                           {{"p", p}, {"residue", r}, {"base_a", integer_json(a)}}};
    return from_lemma1(lemma1_check(a, p, config.rank), std::move(construction));
  }

  if (r == 4 || r == 7) {
    const std::int64_t b = least_non_cube(p);
    const arith::Congruence system[] = {{8, 9}, {b, p}};
    const std::int64_t A = arith::crt(system);
    const auto search = cubesum::find_cubesum_prime(A, p, config.prime_search_bound, config.rank, config.witness_bound);
    if (!search.found) {
      CertifyOutcome out;
      out.no_decision = NoDecision{"no cube-sum prime l = " + std::to_string(A) + " (mod " + std::to_string(9 * p) +
                                       ") up to " + std::to_string(config.prime_search_bound),
                                   std::nullopt};
      return out;
    }
    const auto& found = *search.found;
    const std::int64_t l = found.ell;
    json ell = {{"ell", l}, {"rule", cubesum::to_string(found.verdict.rule)}, {"detail", found.verdict.detail}};
    if (found.verdict.witness) {
      ell["witness"] = {rational_text(found.verdict.witness->X), rational_text(found.verdict.witness->Y)};
    }
    ChainLink construction{"p = " + std::to_string(r) + " (mod 9): l = " + std::to_string(l) +
                               " is a cube sum with l = 8 (mod 9) and l = B (mod p), B not a cube mod p",
                           "prime-class-4-7",
                           {{"p", p}, {"residue", r}, {"B", b}, {"A", A}, {"modulus", 9 * p}, {"cube_sum_prime", ell},
                            {"primes_tried", search.primes_tried}}};
    return from_lemma1(lemma1_check(Integer(-432) * l * l, p, config.rank), std::move(construction));
  }

  if (r == 8) {
    const auto sieve = enumerate_S_sieve(config.sieve_limit);
    for (std::size_t i = 0; i < sieve.size(); ++i) {
      const std::int64_t l = sieve[i];
      if (arith::cubic_residue_test(p % l, l)) continue;
      ChainLink construction{"p = 8 (mod 9): l = " + std::to_string(l) +
                                 " is in the sieve set and p is not a cube mod l",
                             "prime-class-8-sieve",
                             {{"p", p}, {"residue", r}, {"ell", l}, {"sieve_index", i + 1}}};
      return from_lemma1(lemma1_check(Integer(-432) * l * l, p, config.rank), std::move(construction));
    }
    CertifyOutcome out;
    out.no_decision = NoDecision{"no sieve prime up to " + std::to_string(config.sieve_limit) +
                                     " has p as a non-cube",
                                 std::nullopt};
    return out;
  }

  CertifyOutcome out;
  out.no_decision = NoDecision{"p = 1 (mod 9): no construction available", std::nullopt};
  return out;
}

std::vector<std::int64_t> enumerate_S_sieve(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (const std::int64_t l : arith::sieve_primes(limit)) {
    if ((l % 9 == 4 || l % 9 == 7) && !arith::cubic_residue_test(3, l)) out.push_back(l);
  }
  return out;
}

double predicted_density(int depth) {
  if (depth < 0) throw std::invalid_argument("predicted_density: depth must be nonnegative");
  return 4.0 / 6.0 + (1.0 - std::pow(3.0, -depth)) / 6.0;
}

DensityReport density_experiment(std::int64_t limit, int depth) {
  if (limit < 1000) throw std::invalid_argument("density_experiment: limit must be at least 1000");
  if (depth < 1) throw std::invalid_argument("density_experiment: depth must be at least 1");
  DensityReport rep;
  rep.limit = limit;
  rep.depth = depth;
  for (std::int64_t bound = 1000; static_cast<int>(rep.sieve.size()) < depth; bound *= 4) {
    rep.sieve = enumerate_S_sieve(bound);
  }
  rep.sieve.resize(static_cast<std::size_t>(depth));
  for (const int c : {1, 2, 4, 5, 7, 8}) rep.classes[c] = {};

  for (const std::int64_t p : arith::sieve_primes(limit)) {
    if (p <= 3) continue;
    const int c = static_cast<int>(p % 9);
    auto& cls = rep.classes[c];
    ++cls.primes;
    bool certified = c == 2 || c == 4 || c == 5 || c == 7;
    if (c == 8) {
      certified = std::any_of(rep.sieve.begin(), rep.sieve.end(),
                              [p](std::int64_t l) { return !arith::cubic_residue_test(p % l, l); });
    }
    if (certified) ++cls.certified;
  }

  const double class8_rate = 1.0 - std::pow(3.0, -depth);
  double expected = 0;
  for (const auto& [c, cls] : rep.classes) {
    rep.primes += cls.primes;
    rep.certified += cls.certified;
    if (c == 8) {
      expected += class8_rate * static_cast<double>(cls.primes);
    } else if (c != 1) {
      expected += static_cast<double>(cls.primes);
    }
  }
  if (rep.primes > 0) {
    rep.certified_fraction = static_cast<double>(rep.certified) / static_cast<double>(rep.primes);
    rep.predicted_fraction = expected / static_cast<double>(rep.primes);
  }
  const auto& c8 = rep.classes[8];
  rep.class8_fraction = c8.primes > 0 ? static_cast<double>(c8.certified) / static_cast<double>(c8.primes) : 0.0;
  rep.class8_predicted = class8_rate;
  return rep;
}

ScanReport scan_S_prop44(std::int64_t limit, const lseries::RankConfig& config) {
  if (limit < 2) throw std::invalid_argument("scan_S_prop44: limit must be at least 2");
  ScanReport rep;
  rep.limit = limit;
  for (std::int64_t D = -limit; D <= limit; ++D) {
    if (D == 0 || D == 1 || !arith::is_square_free(D)) continue;
    const Integer d = D;
    ScanEntry entry{D, lseries::rank_evidence(MordellCurve(Integer(-432) * d * d * d), config)};
    if (entry.evidence.positive()) {
      rep.members.push_back(D);
    } else if (entry.evidence.zero()) {
      rep.zero.push_back(D);
    } else {
      rep.undetermined.push_back(D);
    }
    rep.entries.push_back(std::move(entry));
  }
  return rep;
}

CertifyOutcome degree12_certificate(std::int64_t D, std::int64_t p, const CertifyConfig& config) {
  if (!prime_above_three(p) || (p % 9 != 2 && p % 9 != 5)) {
    throw std::invalid_argument("degree12_certificate: p must be a prime = 2, 5 (mod 9)");
  }
  if (D == 0 || D == 1 || !arith::is_square_free(D)) {
    throw std::invalid_argument("degree12_certificate: D must be square-free and not 0 or 1");
  }
  CertifyOutcome out;
  const auto base = certify_prime_degree6(p, config);
  if (!base.certificate) {
    out.no_decision = base.no_decision;
    return out;
  }

  const Integer d = D;
  const auto positive = lseries::rank_evidence(MordellCurve(Integer(-432) * d * d * d), config.rank);
  if (!positive.positive()) {
    out.no_decision = NoDecision{"no positive rank evidence for " + positive.curve.label(), positive.curve};
    return out;
  }
  const auto torsion_only = lseries::rank_evidence(MordellCurve(-432), config.rank);
  if (!torsion_only.zero()) {
    out.no_decision = NoDecision{"no rank-zero evidence for E_{-432}", torsion_only.curve};
    return out;
  }
  std::array<RankEvidence, 2> twists;
  const Integer p2 = Integer(p) * p;
  twists[0] = lseries::rank_evidence(MordellCurve(Integer(-432) * p2), config.rank);
  twists[1] = lseries::rank_evidence(MordellCurve(Integer(-432) * p2 * p2), config.rank);
  for (const auto& ev : twists) {
    if (ev.verdict != Verdict::ZeroByCongruence) {
      out.no_decision = NoDecision{"congruence rule does not give rank 0 for " + ev.curve.label(), ev.curve};
      return out;
    }
  }

  const std::string f = cube_root_field(p);
  const std::string l = "Q(zeta_3, sqrt(" + std::to_string(D) + "), cbrt(" + std::to_string(p) + "))";
  H10Certificate cert;
  cert.field = {FieldType::Degree12, D, p};
  cert.chain.push_back({"Hilbert's tenth problem is unsolvable over the ring of integers of " + f, "degree6-certificate",
                        to_json(*base.certificate)});
  cert.chain.push_back(evidence_link(positive));
  cert.chain.push_back(evidence_link(torsion_only));
  for (const auto& ev : twists) cert.chain.push_back(evidence_link(ev));
  cert.chain.push_back({"rank E_{-432}(F) = rank E_{-432}(K) + rank " + twists[0].curve.label() + "(K) + rank " +
                            twists[1].curve.label() + "(K) = 0",
                        "cubic-twist-rank-sum",
                        {{"F", f}, {"K", "Q(zeta_3)"}}});
  cert.chain.push_back({"rank E_{-432}(F(sqrt " + std::to_string(D) + ")) = rank E_{-432}(F) + rank " +
                            positive.curve.label() + "(F) > 0",
                        "quadratic-twist-rank-sum",
                        {{"F", f}, {"L", l}, {"quadratic_twist", positive.curve.label()}}});
  cert.chain.push_back({"O_L / O_F is integrally Diophantine, so Hilbert's tenth problem is unsolvable over the ring of "
                        "integers of " + l,
                        "gfp-composition",
                        {{"F", f}, {"L", l}}});
  cert.issued = true;
  out.certificate = std::move(cert);
  return out;
}

}  // namespace mh10::h10
