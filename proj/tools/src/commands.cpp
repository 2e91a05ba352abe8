#include <algorithm>
#include <atomic>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mordellh10/h10.hpp"
#include "mordellh10_cli/cli.hpp"

namespace mh10::cli {

using nlohmann::json;

namespace {

enum class RowOutcome { Issued, NoDecision, Mismatch };

const char* to_string(RowOutcome o) {
  switch (o) {
    case RowOutcome::Issued: return "issued";
    case RowOutcome::NoDecision: return "no-decision";
    case RowOutcome::Mismatch: return "mismatch";
  }
  return "?";
}

struct RowResult {
  FixtureRow row;
  h10::Lemma1Outcome outcome;
  RowOutcome status = RowOutcome::Mismatch;
};

// Cache bound to an optional file: loaded on construction, saved by flush().
class CacheSession {
 public:
  CacheSession(const std::optional<std::string>& flag, std::ostream& err) : path_(resolve_cache_path(flag)) {
    if (path_) load_cache(cache_, *path_, err);
  }
  ApCache* get() { return &cache_; }
  void flush(std::ostream& err) {
    if (!path_) return;
    try {
      save_cache(cache_, *path_);
    } catch (const std::exception& e) {
      err << "warning: " << e.what() << "\n";
    }
  }

 private:
  std::optional<std::filesystem::path> path_;
  ApCache cache_;
};

std::optional<Table1Fixture> fixture_or_report(const std::optional<std::string>& flag, std::ostream& err) {
  try {
    return load_fixture(flag ? std::filesystem::path(*flag) : default_fixture_path());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

json no_decision_json(const h10::FieldDescriptor& field, const h10::NoDecision& nd) {
  h10::H10Certificate cert;
  cert.field = field;
  json data = json::object();
  if (nd.blocking) data["blocking_curve"] = nd.blocking->label();
  cert.chain.push_back({nd.reason, "NoDecision", data});
  return h10::to_json(cert);
}

void print_certificate_text(const json& cert, std::ostream& out) {
  const auto& field = cert["field"];
  out << (cert["issued"].get<bool>() ? "issued" : "not issued") << ": " << field["type"].get<std::string>()
      << " D=" << field["D"].dump() << " p=" << field["p"].dump() << "\n";
  for (const auto& link : cert["chain"]) {
    out << "  [" << link["rule"].get<std::string>() << "] " << link["claim"].get<std::string>() << "\n";
  }
}

}  // namespace

int reproduce_table1(const Table1Options& opts, std::ostream& out, std::ostream& err) {
  const auto fixture = fixture_or_report(opts.fixture, err);
  if (!fixture) return kUsage;
  CacheSession cache(opts.cache, err);
  lseries::RankConfig cfg;
  cfg.cache = cache.get();

  std::vector<RowResult> results;
  for (const auto& row : fixture->rows) {
    if (row.D <= opts.max_d) results.push_back({row, {}, RowOutcome::Mismatch});
  }
  parallel_for(results.size(), opts.jobs, [&](std::size_t i) {
    auto& r = results[i];
    r.outcome = h10::lemma1_check(Integer(r.row.a), r.row.D, cfg);
    if (r.outcome.certificate) {
      r.status = r.row.expect_exactly_one ? RowOutcome::Issued : RowOutcome::Mismatch;
    } else if (r.outcome.no_decision) {
      r.status = RowOutcome::NoDecision;
    } else {
      r.status = r.row.expect_exactly_one ? RowOutcome::Mismatch : RowOutcome::Issued;
    }
  });
  cache.flush(err);

  std::size_t issued = 0, undecided = 0, mismatched = 0;
  for (const auto& r : results) {
    issued += r.status == RowOutcome::Issued;
    undecided += r.status == RowOutcome::NoDecision;
    mismatched += r.status == RowOutcome::Mismatch;
  }

  if (opts.format == Format::Json) {
    json rows = json::array();
    for (const auto& r : results) {
      json evidence = json::array();
      for (const auto& ev : r.outcome.triple.evidence) evidence.push_back(h10::to_json(ev));
      json row = {{"D", r.row.D}, {"a", r.row.a}, {"expected", "exactly-one-positive"},
                  {"outcome", to_string(r.status)}, {"evidence", evidence}};
      if (r.outcome.certificate) row["certificate"] = h10::to_json(*r.outcome.certificate);
      if (r.outcome.no_decision) row["reason"] = r.outcome.no_decision->reason;
      rows.push_back(row);
    }
    out << json{{"max_d", opts.max_d},
                {"rows", rows},
                {"summary", {{"rows", results.size()}, {"issued", issued}, {"no_decision", undecided}, {"mismatch", mismatched}}}}
               .dump(2)
        << "\n";
  } else {
    out << std::setw(5) << "D" << std::setw(5) << "a" << "  " << std::left << std::setw(13) << "outcome" << std::setw(18)
        << "E_a" << std::setw(18) << "E_aD^2" << "E_aD^4" << std::right << "\n";
    for (const auto& r : results) {
      out << std::setw(5) << r.row.D << std::setw(5) << r.row.a << "  " << std::left << std::setw(13)
          << to_string(r.status);
      for (int i = 0; i < 3; ++i) {
        const auto v = lseries::to_string(r.outcome.triple.evidence[i].verdict);
        if (i < 2) {
          out << std::setw(18) << v;
        } else {
          out << v;
        }
      }
      out << std::right << "\n";
    }
    out << "rows " << results.size() << "  issued " << issued << "  no-decision " << undecided << "  mismatch "
        << mismatched << "\n";
  }
  return mismatched == 0 && undecided == 0 ? kSuccess : kFailure;
}

int certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err) {
  const int chosen = (opts.prime ? 1 : 0) + (opts.field ? 1 : 0) + (opts.degree12 ? 1 : 0);
  if (chosen != 1) {
    err << "error: give exactly one of --prime, --field, --degree12\n";
    return kUsage;
  }
  CacheSession cache(opts.cache, err);
  h10::CertifyConfig cfg;
  cfg.rank.cache = cache.get();

  json result;
  bool issued = false;
  try {
    if (opts.prime) {
      const auto outcome = h10::certify_prime_degree6(*opts.prime, cfg);
      issued = outcome.certificate.has_value();
      result = issued ? h10::to_json(*outcome.certificate)
                      : no_decision_json({h10::FieldType::Degree6, *opts.prime, std::nullopt}, *outcome.no_decision);
    } else if (opts.field) {
      const std::int64_t D = *opts.field;
      if (D <= 1 || !arith::is_cube_free(D)) {
        err << "error: --field needs a cube-free integer > 1\n";
        return kUsage;
      }
      const auto fixture = fixture_or_report(opts.fixture, err);
      if (!fixture) return kUsage;
      auto constants = fixture->base_constants();
      if (const auto* row = fixture->find(D)) {
        constants.erase(std::find(constants.begin(), constants.end(), row->a));
        constants.insert(constants.begin(), row->a);
      }
      std::optional<h10::NoDecision> last;
      for (const std::int64_t a : constants) {
        auto outcome = h10::lemma1_check(Integer(a), D, cfg.rank);
        if (outcome.certificate) {
          issued = true;
          result = h10::to_json(*outcome.certificate);
          break;
        }
        if (outcome.no_decision && !last) last = outcome.no_decision;
      }
      if (!issued) {
        const h10::NoDecision nd =
            last.value_or(h10::NoDecision{"no base constant among the fixture's gives exactly one positive twist", std::nullopt});
        result = no_decision_json({h10::FieldType::Degree6, D, std::nullopt}, nd);
      }
    } else {
      std::int64_t D = 0, p = 0;
      char comma = 0;
      std::istringstream in(*opts.degree12);
      if (!(in >> D >> comma >> p) || comma != ',' || !in.eof()) {
        err << "error: --degree12 expects D,P\n";
        return kUsage;
      }
      const auto outcome = h10::degree12_certificate(D, p, cfg);
      issued = outcome.certificate.has_value();
      result = issued ? h10::to_json(*outcome.certificate)
                      : no_decision_json({h10::FieldType::Degree12, D, p}, *outcome.no_decision);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  cache.flush(err);
  if (opts.format == Format::Json) {
    out << result.dump(2) << "\n";
  } else {
    print_certificate_text(result, out);
  }
  return issued ? kSuccess : kFailure;
}

int density(const DensityOptions& opts, std::ostream& out, std::ostream& err) {
  h10::DensityReport rep;
  try {
    rep = h10::density_experiment(opts.limit, opts.depth);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (opts.format == Format::Json) {
    json classes = json::object();
    for (const auto& [c, cnt] : rep.classes) {
      classes[std::to_string(c)] = {{"primes", cnt.primes}, {"certified", cnt.certified}};
    }
    out << json{{"limit", rep.limit},
                {"depth", rep.depth},
                {"sieve", rep.sieve},
                {"classes", classes},
                {"primes", rep.primes},
                {"certified", rep.certified},
                {"certified_fraction", rep.certified_fraction},
                {"predicted_fraction", rep.predicted_fraction},
                {"class8_fraction", rep.class8_fraction},
                {"class8_predicted", rep.class8_predicted},
                {"limit_density", h10::predicted_density(rep.depth)}}
               .dump(2)
        << "\n";
    return kSuccess;
  }
  out << std::setw(8) << "p mod 9" << std::setw(10) << "primes" << std::setw(11) << "certified" << std::setw(10)
      << "fraction" << "\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& [c, cnt] : rep.classes) {
    const double frac = cnt.primes > 0 ? static_cast<double>(cnt.certified) / static_cast<double>(cnt.primes) : 0.0;
    out << std::setw(8) << c << std::setw(10) << cnt.primes << std::setw(11) << cnt.certified << std::setw(10) << frac
        << "\n";
  }
  out << std::setw(8) << "all" << std::setw(10) << rep.primes << std::setw(11) << rep.certified << std::setw(10)
      << rep.certified_fraction << "\n";
  out << "predicted " << rep.predicted_fraction << "  class-8 " << rep.class8_fraction << " (predicted "
      << rep.class8_predicted << ")\n";
  out << "sieve primes:";
  for (const auto l : rep.sieve) out << " " << l;
  out << "\n";
  return kSuccess;
}

int scan_s(const ScanOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.limit < 2) {
    err << "error: --limit must be at least 2\n";
    return kUsage;
  }
  CacheSession cache(opts.cache, err);
  lseries::RankConfig cfg;
  cfg.cache = cache.get();
  const auto rep = h10::scan_S_prop44(opts.limit, cfg);
  cache.flush(err);
  if (opts.format == Format::Json) {
    json entries = json::array();
    for (const auto& e : rep.entries) entries.push_back({{"D", e.D}, {"evidence", h10::to_json(e.evidence)}});
    out << json{{"limit", rep.limit},
                {"members", rep.members},
                {"zero", rep.zero},
                {"undetermined", rep.undetermined},
                {"counts", {{"members", rep.members.size()}, {"zero", rep.zero.size()}, {"undetermined", rep.undetermined.size()}}},
                {"entries", entries}}
               .dump(2)
        << "\n";
    return kSuccess;
  }
  out << std::setw(6) << "D" << "  " << std::left << std::setw(18) << "verdict" << "evidence" << std::right << "\n";
  for (const auto& e : rep.entries) {
    out << std::setw(6) << e.D << "  " << std::left << std::setw(18) << lseries::to_string(e.evidence.verdict)
        << std::right;
    if (e.evidence.point) out << "point " << e.evidence.point->to_string();
    else if (e.evidence.analytic) out << "eps " << e.evidence.analytic->eps << ", value " << e.evidence.analytic->value;
    else out << e.evidence.note;
    out << "\n";
  }
  out << "members " << rep.members.size() << "  zero " << rep.zero.size() << "  undetermined "
      << rep.undetermined.size() << "\n";
  return kSuccess;
}

}  // namespace mh10::cli
