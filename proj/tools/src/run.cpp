#include <map>
#include <ostream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "mordellh10_cli/cli.hpp"

namespace mh10::cli {

namespace {

const std::map<std::string, Format> kFormats{{"text", Format::Text}, {"json", Format::Json}};

void add_format(CLI::App* cmd, Format& format) {
  cmd->add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank evidence and Hilbert's tenth problem certificates for Mordell curves", "mordell-h10"};
  app.require_subcommand(1);

  Table1Options table1;
  auto* t1 = app.add_subcommand("reproduce-table1", "Run the twist-triple criterion over the Table 1 fixture");
  t1->add_option("--max-d", table1.max_d, "Largest D to run")->check(CLI::Range(std::int64_t{2}, std::int64_t{100}));
  t1->add_option("--cache", table1.cache, "a_p cache file (MORDELL_H10_CACHE overrides)");
  t1->add_option("--fixture", table1.fixture, "Fixture file");
  t1->add_option("--jobs", table1.jobs, "Worker threads (0: all cores)");
  add_format(t1, table1.format);

  CertifyOptions cert;
  auto* ce = app.add_subcommand("certify", "Emit a certificate for one field");
  auto* prime = ce->add_option("--prime", cert.prime, "Q(zeta_3, cbrt P) for a prime P > 3");
  auto* field = ce->add_option("--field", cert.field, "Q(zeta_3, cbrt D) for cube-free D > 1");
  auto* deg12 = ce->add_option("--degree12", cert.degree12, "Q(zeta_3, sqrt D, cbrt P), given as D,P");
  prime->excludes(field, deg12);
  field->excludes(deg12);
  ce->add_option("--cache", cert.cache, "a_p cache file (MORDELL_H10_CACHE overrides)");
  ce->add_option("--fixture", cert.fixture, "Fixture file supplying base constants for --field");
  add_format(ce, cert.format);

  DensityOptions dens;
  auto* de = app.add_subcommand("density", "Certified fraction of primes up to a limit");
  de->add_option("--limit", dens.limit, "Largest prime")->required();
  de->add_option("--depth", dens.depth, "Sieve depth")->required();
  add_format(de, dens.format);

  ScanOptions scan;
  auto* sc = app.add_subcommand("scan-s", "Square-free D with positive rank evidence for E_{-432 D^3}");
  sc->add_option("--limit", scan.limit, "Scan |D| <= limit")->required();
  sc->add_option("--cache", scan.cache, "a_p cache file (MORDELL_H10_CACHE overrides)");
  add_format(sc, scan.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (t1->parsed()) return reproduce_table1(table1, out, err);
  if (ce->parsed()) return certify(cert, out, err);
  if (de->parsed()) return density(dens, out, err);
  return scan_s(scan, out, err);
}

}  // namespace mh10::cli
