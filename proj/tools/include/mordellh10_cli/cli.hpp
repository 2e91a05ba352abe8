#pragma once

// Library behind the mordell-h10 executable: the Table 1 fixture, a_p cache
// persistence and the four commands. Commands write to the given streams and
// return the process exit code.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mordellh10/ap_cache.hpp"

namespace mh10::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

enum class Format { Text, Json };

struct FixtureRow {
  std::int64_t D = 0;
  std::int64_t a = 0;
  bool expect_exactly_one = true;
};

struct Table1Fixture {
  std::vector<FixtureRow> rows;  // ascending D

  /// Distinct base constants in order of first appearance.
  std::vector<std::int64_t> base_constants() const;
  const FixtureRow* find(std::int64_t D) const;
};

/// Throws std::runtime_error on a missing file or a malformed line.
Table1Fixture load_fixture(const std::filesystem::path& path);

/// Path baked in at build time.
std::filesystem::path default_fixture_path();

/// MORDELL_H10_CACHE if set and non-empty, else the flag value.
std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::string>& flag);

/// Loads a cache file if it exists; skipped lines are reported on `warnings`.
void load_cache(ApCache& cache, const std::filesystem::path& path, std::ostream& warnings);

/// Writes to a temporary sibling and renames it over `path`.
void save_cache(const ApCache& cache, const std::filesystem::path& path);

struct Table1Options {
  std::int64_t max_d = 100;
  std::optional<std::string> cache;
  std::optional<std::string> fixture;
  Format format = Format::Text;
  unsigned jobs = 0;  // 0: hardware concurrency
};

struct CertifyOptions {
  std::optional<std::int64_t> prime;
  std::optional<std::int64_t> field;
  std::optional<std::string> degree12;  // "D,P"
  std::optional<std::string> cache;
  std::optional<std::string> fixture;
  Format format = Format::Json;
};

struct DensityOptions {
  std::int64_t limit = 100'000;
  int depth = 5;
  Format format = Format::Text;
};

struct ScanOptions {
  std::int64_t limit = 50;
  std::optional<std::string> cache;
  Format format = Format::Text;
};

int reproduce_table1(const Table1Options& opts, std::ostream& out, std::ostream& err);
int certify(const CertifyOptions& opts, std::ostream& out, std::ostream& err);
int density(const DensityOptions& opts, std::ostream& out, std::ostream& err);
int scan_s(const ScanOptions& opts, std::ostream& out, std::ostream& err);

/// Full argument parsing and dispatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mh10::cli
