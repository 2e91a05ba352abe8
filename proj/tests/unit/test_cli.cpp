#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mordellh10_cli/cli.hpp"

using namespace mh10;
using namespace mh10::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mordell-h10");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("mordellh10_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { ::unsetenv("MORDELL_H10_CACHE"); }
  void TearDown() override { ::unsetenv("MORDELL_H10_CACHE"); }
};

}  // namespace

TEST_F(CliTest, FixtureLoads) {
  const auto fx = load_fixture(MORDELLH10_TEST_FIXTURE);
  ASSERT_EQ(fx.rows.size(), 84u);
  EXPECT_EQ(fx.rows.front().D, 2);
  EXPECT_TRUE(std::is_sorted(fx.rows.begin(), fx.rows.end(), [](auto& l, auto& r) { return l.D < r.D; }));
  ASSERT_NE(fx.find(22), nullptr);
  EXPECT_EQ(fx.find(22)->a, 14);
  EXPECT_EQ(fx.find(39)->a, 3);
  EXPECT_EQ(fx.find(8), nullptr);
  EXPECT_EQ(default_fixture_path(), fs::path(MORDELLH10_TEST_FIXTURE));
}

TEST_F(CliTest, MalformedFixtureThrows) {
  const auto p = temp_path("bad.tsv");
  std::ofstream(p) << "2\tx\texactly-one-positive\n";
  EXPECT_THROW(load_fixture(p), std::runtime_error);
  EXPECT_THROW(load_fixture(temp_path("missing.tsv")), std::runtime_error);
  fs::remove(p);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, kUsage);
  EXPECT_EQ(run_cli({"certify"}).code, kUsage);
  EXPECT_EQ(run_cli({"certify", "--prime", "5", "--field", "7"}).code, kUsage);
  EXPECT_EQ(run_cli({"certify", "--degree12", "2,7"}).code, kUsage);
  EXPECT_EQ(run_cli({"certify", "--degree12", "garbage"}).code, kUsage);
  EXPECT_EQ(run_cli({"reproduce-table1", "--max-d", "500"}).code, kUsage);
  EXPECT_EQ(run_cli({"reproduce-table1", "--fixture", temp_path("none.tsv").string()}).code, kUsage);
  EXPECT_EQ(run_cli({"density", "--limit", "1000"}).code, kUsage);
}

TEST_F(CliTest, CertifyOutcomes) {
  auto r = run_cli({"certify", "--prime", "5"});
  EXPECT_EQ(r.code, kSuccess);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["issued"].get<bool>());
  EXPECT_EQ(j["field"]["D"], 5);

  r = run_cli({"certify", "--prime", "19"});
  EXPECT_EQ(r.code, kFailure);
  const auto nd = nlohmann::json::parse(r.out);
  EXPECT_FALSE(nd["issued"].get<bool>());
  EXPECT_EQ(nd["chain"].back()["rule"], "NoDecision");

  EXPECT_EQ(run_cli({"certify", "--field", "22"}).code, kSuccess);
  EXPECT_EQ(run_cli({"certify", "--degree12", "2,5"}).code, kSuccess);
}

TEST_F(CliTest, CacheIsWrittenAtomicallyAndEnvOverrides) {
  const auto flag = temp_path("flag.tsv"), env = temp_path("env.tsv");
  fs::remove(flag);
  fs::remove(env);
  ::setenv("MORDELL_H10_CACHE", env.c_str(), 1);
  EXPECT_EQ(resolve_cache_path(std::string(flag.string())), env);
  const auto cold = run_cli({"reproduce-table1", "--max-d", "12", "--cache", flag.string()});
  EXPECT_EQ(cold.code, kSuccess) << cold.err;
  EXPECT_FALSE(fs::exists(flag));
  ASSERT_TRUE(fs::exists(env));
  for (const auto& entry : fs::directory_iterator(env.parent_path())) {
    EXPECT_EQ(entry.path().string().find(env.filename().string() + ".tmp"), std::string::npos);
  }
  const std::string text = slurp(env);
  EXPECT_FALSE(text.empty());
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');

  ApCache reloaded;
  std::istringstream in(text);
  EXPECT_EQ(reloaded.read(in), 0u);
  std::ostringstream rewritten;
  reloaded.write(rewritten);
  EXPECT_EQ(rewritten.str(), text);

  const auto warm = run_cli({"reproduce-table1", "--max-d", "12"});
  EXPECT_EQ(warm.code, kSuccess);
  EXPECT_EQ(warm.out, cold.out);
  EXPECT_EQ(slurp(env), text);

  ::unsetenv("MORDELL_H10_CACHE");
  ::setenv("MORDELL_H10_CACHE", "", 1);
  EXPECT_EQ(resolve_cache_path(std::string("x")), fs::path("x"));
  EXPECT_EQ(resolve_cache_path(std::nullopt), std::nullopt);
  fs::remove(env);
}

TEST_F(CliTest, SaveCacheReplacesExistingFile) {
  const auto p = temp_path("replace.tsv");
  std::ofstream(p) << "stale\n";
  ApCache c;
  c.insert(Integer(1), 7, -4);
  save_cache(c, p);
  EXPECT_EQ(slurp(p), "1\t7\t-4\n");
  std::ostringstream warn;
  ApCache d;
  load_cache(d, p, warn);
  EXPECT_EQ(d.find(Integer(1), 7), -4);
  fs::remove(p);
}

TEST_F(CliTest, JsonTableOutputIsDeterministic) {
  const auto a = run_cli({"reproduce-table1", "--max-d", "10", "--format", "json", "--jobs", "1"});
  const auto b = run_cli({"reproduce-table1", "--max-d", "10", "--format", "json", "--jobs", "4"});
  EXPECT_EQ(a.code, kSuccess);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::accept(a.out));
}

TEST_F(CliTest, DensityAndScan) {
  const auto d = run_cli({"density", "--limit", "2000", "--depth", "2", "--format", "json"});
  EXPECT_EQ(d.code, kSuccess);
  const auto dj = nlohmann::json::parse(d.out);
  EXPECT_TRUE(dj.is_object());
  const auto s = run_cli({"scan-s", "--limit", "10", "--format", "json"});
  EXPECT_EQ(s.code, kSuccess);
  EXPECT_NE(s.out.find("-6"), std::string::npos);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = MORDELLH10_CLI_PATH;
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " certify --prime 5 >/dev/null").c_str())), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " certify --prime 19 >/dev/null").c_str())), 1);
  EXPECT_EQ(WEXITSTATUS(std::system((bin + " certify --degree12 4,5 >/dev/null 2>&1").c_str())), 2);
}
