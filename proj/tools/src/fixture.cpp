#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mordellh10/arith.hpp"
#include "mordellh10_cli/cli.hpp"

namespace mh10::cli {

std::vector<std::int64_t> Table1Fixture::base_constants() const {
  std::vector<std::int64_t> out;
  for (const auto& row : rows) {
    if (std::find(out.begin(), out.end(), row.a) == out.end()) out.push_back(row.a);
  }
  return out;
}

const FixtureRow* Table1Fixture::find(std::int64_t D) const {
  const auto it = std::find_if(rows.begin(), rows.end(), [D](const FixtureRow& r) { return r.D == D; });
  return it == rows.end() ? nullptr : &*it;
}

Table1Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fixture not found: " + path.string());
  Table1Fixture fx;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    FixtureRow row;
    std::string expected;
    if (!(fields >> row.D >> row.a >> expected) || row.D < 2 || row.a == 0 || !arith::is_cube_free(row.D)) {
      throw std::runtime_error("fixture line " + std::to_string(line_no) + " is malformed");
    }
    if (expected != "exactly-one-positive") {
      throw std::runtime_error("fixture line " + std::to_string(line_no) + ": unknown expectation '" + expected + "'");
    }
    fx.rows.push_back(row);
  }
  std::sort(fx.rows.begin(), fx.rows.end(), [](const auto& l, const auto& r) { return l.D < r.D; });
  return fx;
}

std::filesystem::path default_fixture_path() { return MORDELLH10_FIXTURE_PATH; }

}  // namespace mh10::cli
