#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

#include "mordellh10_cli/cli.hpp"

namespace mh10::cli {

std::optional<std::filesystem::path> resolve_cache_path(const std::optional<std::string>& flag) {
  if (const char* env = std::getenv("MORDELL_H10_CACHE"); env != nullptr && *env != '\0') return env;
  if (flag && !flag->empty()) return *flag;
  return std::nullopt;
}

void load_cache(ApCache& cache, const std::filesystem::path& path, std::ostream& warnings) {
  std::ifstream in(path);
  if (!in) return;
  const std::size_t skipped = cache.read(in, &warnings);
  if (skipped > 0) warnings << "ap cache: " << skipped << " corrupt line(s) ignored in " << path.string() << "\n";
}

void save_cache(const ApCache& cache, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache: " + tmp.string());
    cache.write(out);
    out.flush();
    if (!out) throw std::runtime_error("cannot write cache: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot replace cache " + path.string() + ": " + ec.message());
  }
}

}  // namespace mh10::cli
