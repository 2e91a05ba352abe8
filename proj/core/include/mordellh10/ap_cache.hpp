#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>

#include "mordellh10/arith.hpp"

namespace mh10 {

/// Shared table of traces of Frobenius keyed by (sixth-power-free constant, p).
/// Reads may run concurrently; inserts take an exclusive lock.
///
/// Text form: one `a<TAB>p<TAB>ap` line per entry, sorted by (a, p), LF
/// line endings, no header.
class ApCache {
 public:
  ApCache() = default;
  ApCache(const ApCache& other);
  ApCache& operator=(const ApCache& other);

  std::optional<std::int64_t> find(const Integer& a, std::int64_t p) const;
  /// Every cached (p, ap) for one constant.
  std::map<std::int64_t, std::int64_t> entries(const Integer& a) const;
  void insert(const Integer& a, std::int64_t p, std::int64_t ap);
  void insert_all(const Integer& a, const std::map<std::int64_t, std::int64_t>& values);

  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Merges lines from `in`. Malformed lines and lines that violate the Hasse
  /// bound are skipped; the number skipped is returned.
  std::size_t read(std::istream& in, std::ostream* warnings = nullptr);
  void write(std::ostream& out) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<Integer, std::map<std::int64_t, std::int64_t>> table_;
};

}  // namespace mh10
