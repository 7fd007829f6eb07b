#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(INTERPERC_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, n);
  int raw = pclose(p);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("interperc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

}  // namespace

TEST_F(CliTest, SelftestPasses) {
  auto o = run("selftest --out " + dir.string());
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_TRUE(fs::exists(dir / "selftest.csv"));
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
}

TEST_F(CliTest, UsageErrorsExitWithOne) {
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("gen --no-such-flag").status, 1);
  EXPECT_EQ(run("interpolate --method nonsense --out " + dir.string()).status, 1);
  EXPECT_EQ(run("gen --model poisson:-1 --out " + dir.string()).status, 1);
  EXPECT_FALSE(fs::exists(dir / "manifest.json"));
}

TEST_F(CliTest, HelpExitsWithZero) {
  auto o = run("interpolate --help");
  EXPECT_EQ(o.status, 0);
  EXPECT_NE(o.out.find("interpolant.csv"), std::string::npos);
}

TEST_F(CliTest, RuntimeFailureRemovesOutputs) {
  // The probe sees only zeros, so no epsilon can be found.
  auto o = run("criteria --kind subset --mu-expr 0*n --out " + dir.string());
  EXPECT_EQ(o.status, 2);
  EXPECT_FALSE(fs::exists(dir / "manifest.json"));
  EXPECT_FALSE(fs::exists(dir / "blocks.csv"));
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  std::string args = "interpolate --method continuous --lines 20 --seed 5 --svg --out " + dir.string();
  const char* files[] = {"interpolant.csv", "levels.csv", "points.csv", "interpolant.svg", "manifest.json"};
  ASSERT_EQ(run(args).status, 0);
  std::vector<std::string> first;
  for (const char* f : files) {
    ASSERT_TRUE(fs::exists(dir / f)) << f;
    first.push_back(slurp(dir / f));
  }
  ASSERT_EQ(run(args).status, 0);
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(slurp(dir / files[i]), first[i]) << files[i];
}

TEST_F(CliTest, ManifestEchoesConfigAndSchema) {
  ASSERT_EQ(run("brownian --depth 3 --seed 9 --out " + dir.string()).status, 0);
  auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["command"], "brownian");
  EXPECT_EQ(m["seed"], 9);
  EXPECT_EQ(m["config"]["depth"], 3);
  EXPECT_FALSE(m.contains("wall_time_s"));
  EXPECT_EQ(m["schema"]["path.csv"].size(), 4u);
  // 2^3 + 1 rows plus the header.
  std::ifstream is(dir / "path.csv");
  std::size_t lines = 0;
  for (std::string l; std::getline(is, l);) ++lines;
  EXPECT_EQ(lines, 10u);
}

TEST_F(CliTest, ConfigFileFillsUnsetFlags) {
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "# comment\ndepth = 2\nseed = 4\n";
  }
  ASSERT_EQ(run("brownian --config " + (dir / "run.cfg").string() + " --seed 6 --out " + dir.string()).status, 0);
  auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["config"]["depth"], 2);
  EXPECT_EQ(m["seed"], 6);
}

TEST_F(CliTest, EveryMethodRuns) {
  for (const char* method : {"continuous", "monotone", "bv-trace", "bv-min"}) {
    auto o = run(std::string("interpolate --lines 10 --xs grid --method ") + method + " --out " + dir.string());
    EXPECT_EQ(o.status, 0) << method;
  }
  EXPECT_EQ(run("lipschitz --width 20 --height 20 --out " + dir.string()).status, 0);
  EXPECT_EQ(run("sweep --lambdas 0.5,1.5 --widths 10 --trials 20 --out " + dir.string()).status, 0);
  EXPECT_EQ(run("criteria --kind shepp --expr 1/n --cutoffs 10,100,1000 --out " + dir.string()).status, 0);
  EXPECT_EQ(run("circle-cover --n 100 --trials 10 --out " + dir.string()).status, 0);
  EXPECT_EQ(run("rotate-scan --n 10 --steps 50 --out " + dir.string()).status, 0);
  EXPECT_EQ(run("gen --model weibull:3 --lines 2 --out " + dir.string()).status, 0);
  EXPECT_TRUE(fs::exists(dir / "realization_1.csv"));
}
