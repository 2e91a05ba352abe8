#pragma once

// Certificates that Hilbert's tenth problem is unsolvable over O_L for
// L = Q(zeta_3, cbrt D) and L = Q(zeta_3, sqrt D, cbrt p), assembled from rank
// evidence of Mordell curves, plus the prime sieves and scans around them.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mordellh10/cubesum.hpp"
#include "mordellh10/lseries.hpp"
#include "mordellh10/mordell.hpp"

namespace mh10::h10 {

enum class FieldType { Degree6, Degree12 };

struct FieldDescriptor {
  FieldType type = FieldType::Degree6;
  std::int64_t D = 0;
  std::optional<std::int64_t> p;  // Degree12 only
};

struct ChainLink {
  std::string claim;
  std::string rule;
  nlohmann::json data = nlohmann::json::object();
};

struct H10Certificate {
  FieldDescriptor field;
  std::vector<ChainLink> chain;
  bool issued = false;
};

/// {"field": {...}, "issued": bool, "chain": [...], "version": 1}
nlohmann::json to_json(const H10Certificate& cert);
nlohmann::json to_json(const lseries::RankEvidence& ev);

/// E_a, E_{aD^2}, E_{aD^4} with their rank evidence.
struct TwistTriple {
  Integer a;
  std::int64_t D = 0;
  std::array<lseries::RankEvidence, 3> evidence;

  std::array<mordell::MordellCurve, 3> curves() const;
  int positive_count() const;
  int undetermined_count() const;
  /// One member positive, the other two with rank-zero evidence.
  bool exactly_one_positive() const;
  std::optional<int> positive_index() const;
};

struct NoDecision {
  std::string reason;
  std::optional<mordell::MordellCurve> blocking;
};

struct Lemma1Outcome {
  TwistTriple triple;
  std::optional<H10Certificate> certificate;  // exactly one positive
  std::optional<NoDecision> no_decision;      // some member undetermined
  /// Neither: every member decided but the pattern is not exactly one positive.
  bool decided_negative() const { return !certificate && !no_decision; }
};

struct CertifyConfig {
  lseries::RankConfig rank;
  std::int64_t prime_search_bound = 100'000;
  std::int64_t witness_bound = 12;
  std::int64_t sieve_limit = 1'000'000;
};

/// Twist-triple criterion for Q(zeta_3, cbrt D). D cube-free, D > 1.
Lemma1Outcome lemma1_check(const Integer& a, std::int64_t D, const lseries::RankConfig& config = {});

struct CertifyOutcome {
  std::optional<H10Certificate> certificate;
  std::optional<NoDecision> no_decision;
};

/// Degree-6 field Q(zeta_3, cbrt p) for a prime p > 3, by residue class of
/// p mod 9. p = 1 (mod 9) always yields NoDecision.
CertifyOutcome certify_prime_degree6(std::int64_t p, const CertifyConfig& config = {});

/// Primes l = 4, 7 (mod 9) up to `limit` with 3 not a cube mod l, ascending.
std::vector<std::int64_t> enumerate_S_sieve(std::int64_t limit);

struct ClassCount {
  std::int64_t primes = 0;
  std::int64_t certified = 0;
};

struct DensityReport {
  std::int64_t limit = 0;
  int depth = 0;
  std::vector<std::int64_t> sieve;  // the first `depth` members of the sieve set
  std::map<int, ClassCount> classes;  // keyed by p mod 9
  std::int64_t primes = 0;
  std::int64_t certified = 0;
  double certified_fraction = 0.0;
  /// Population-weighted prediction: classes 2,4,5,7 in full and class 8
  /// times 1 - 3^-depth.
  double predicted_fraction = 0.0;
  double class8_fraction = 0.0;
  double class8_predicted = 0.0;
};

/// 4/6 + (1/6)(1 - 3^-depth); tends to 5/6.
double predicted_density(int depth);

/// Primes 5 <= p <= limit, classified by residue mod 9.
DensityReport density_experiment(std::int64_t limit, int depth);

struct ScanEntry {
  std::int64_t D = 0;
  lseries::RankEvidence evidence;
};

struct ScanReport {
  std::int64_t limit = 0;
  std::vector<std::int64_t> members;  // positive evidence, ascending
  std::vector<std::int64_t> zero;
  std::vector<std::int64_t> undetermined;
  std::vector<ScanEntry> entries;
};

/// Square-free D with |D| <= limit, D not 0 or 1, with positive rank evidence
/// for E_{-432 D^3}, the quadratic twist of E_{-432} by D.
ScanReport scan_S_prop44(std::int64_t limit, const lseries::RankConfig& config = {});

/// Q(zeta_3, sqrt D, cbrt p) for square-free D not in {0, 1} and a prime
/// p = 2, 5 (mod 9). Throws std::invalid_argument outside that domain.
CertifyOutcome degree12_certificate(std::int64_t D, std::int64_t p, const CertifyConfig& config = {});

}  // namespace mh10::h10
