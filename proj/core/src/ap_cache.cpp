#include "mordellh10/ap_cache.hpp"

#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>

namespace mh10 {

ApCache::ApCache(const ApCache& other) {
  std::shared_lock lock(other.mutex_);
  table_ = other.table_;
}

ApCache& ApCache::operator=(const ApCache& other) {
  if (this == &other) return *this;
  std::unique_lock lock(mutex_, std::defer_lock);
  std::shared_lock other_lock(other.mutex_, std::defer_lock);
  std::lock(lock, other_lock);
  table_ = other.table_;
  return *this;
}

std::optional<std::int64_t> ApCache::find(const Integer& a, std::int64_t p) const {
  std::shared_lock lock(mutex_);
  const auto it = table_.find(a);
  if (it == table_.end()) return std::nullopt;
  const auto jt = it->second.find(p);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

std::map<std::int64_t, std::int64_t> ApCache::entries(const Integer& a) const {
  std::shared_lock lock(mutex_);
  const auto it = table_.find(a);
  return it == table_.end() ? std::map<std::int64_t, std::int64_t>{} : it->second;
}

void ApCache::insert(const Integer& a, std::int64_t p, std::int64_t ap) {
  std::unique_lock lock(mutex_);
  table_[a][p] = ap;
}

void ApCache::insert_all(const Integer& a, const std::map<std::int64_t, std::int64_t>& values) {
  if (values.empty()) return;
  std::unique_lock lock(mutex_);
  auto& row = table_[a];
  for (const auto& [p, ap] : values) row[p] = ap;
}

std::size_t ApCache::size() const {
  std::shared_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& [a, row] : table_) n += row.size();
  return n;
}

std::size_t ApCache::read(std::istream& in, std::ostream* warnings) {
  std::string line;
  std::size_t skipped = 0;
  std::size_t line_no = 0;
  std::map<Integer, std::map<std::int64_t, std::int64_t>> parsed;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string a_text, p_text, ap_text, extra;
    bool ok = static_cast<bool>(std::getline(fields, a_text, '\t')) &&
              static_cast<bool>(std::getline(fields, p_text, '\t')) &&
              static_cast<bool>(std::getline(fields, ap_text, '\t')) && !std::getline(fields, extra, '\t');
    std::int64_t p = 0, ap = 0;
    Integer a;
    if (ok) {
      try {
        std::size_t used = 0;
        p = std::stoll(p_text, &used);
        ok = used == p_text.size();
        ap = std::stoll(ap_text, &used);
        ok = ok && used == ap_text.size();
        a = Integer(a_text);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    // Reject anything that cannot be a trace of Frobenius at a prime.
    ok = ok && a != 0 && arith::is_prime(p) && ap * ap <= 4 * p;
    if (!ok) {
      ++skipped;
      if (warnings != nullptr) *warnings << "ap cache: skipping malformed line " << line_no << "\n";
      continue;
    }
    parsed[a][p] = ap;
  }
  std::unique_lock lock(mutex_);
  for (auto& [a, row] : parsed) {
    auto& dest = table_[a];
    for (const auto& [p, ap] : row) dest[p] = ap;
  }
  return skipped;
}

void ApCache::write(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  for (const auto& [a, row] : table_) {
    const std::string key = a.str();
    for (const auto& [p, ap] : row) out << key << '\t' << p << '\t' << ap << '\n';
  }
}

}  // namespace mh10
