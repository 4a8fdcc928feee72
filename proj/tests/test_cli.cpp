#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + BPL_CLI_PATH + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bpl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  nlohmann::json read_json(const std::string& name) {
    std::ifstream in(dir_ / name);
    return nlohmann::json::parse(in);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, VerifyYbeDefault) {
  const Result r = run("verify ybe");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("ybe.residual"), std::string::npos);
}

TEST_F(CliTest, MuLengthMismatchNamesTheField) {
  const std::string cfg = write("cfg.json", R"({"L": 3, "n": 1, "mu": [{"re": 0.1, "im": 0.0}]})");
  const Result r = run("verify ybe --config " + cfg);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("'mu'"), std::string::npos) << r.out;
}

TEST_F(CliTest, ConfigFileIsRead) {
  const std::string cfg = write("cfg.json", R"({"L": 2, "n": 1, "gamma": {"re": 0.5, "im": 0.1},
    "mu": [{"re": 0.1, "im": 0.0}, {"re": -0.2, "im": 0.3}], "tol": 1e-9, "seed": 5})");
  const Result r = run("spectrum --json --config " + cfg);
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["config"]["L"], 2);
  EXPECT_DOUBLE_EQ(doc["config"]["gamma"]["re"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(doc["config"]["mu"][1]["im"].get<double>(), 0.3);
  EXPECT_EQ(doc["tables"]["spectrum"]["eigenvalues"].size(), 2u);
}

TEST_F(CliTest, FlagsOverrideFile) {
  const std::string cfg = write("cfg.json", R"({"L": 2, "n": 1, "seed": 5})");
  const Result r = run("verify off --json --L 3 --n 2 --config " + cfg);
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["config"]["L"], 3);
  EXPECT_EQ(doc["config"]["n"], 2);
  EXPECT_EQ(doc["config"]["mu"].size(), 3u);
}

TEST_F(CliTest, BadConfigs) {
  EXPECT_EQ(run("verify ybe --config " + write("a.json", "{not json")).code, 2);
  EXPECT_EQ(run("verify ybe --config " + write("b.json", R"({"L": "three"})")).code, 2);
  EXPECT_EQ(run("verify ybe --L 2 --n 3").code, 2);
  EXPECT_EQ(run("verify ybe --tol -1").code, 2);
  EXPECT_EQ(run("verify nonsense").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(CliTest, ReductionNeedsThreeSites) { EXPECT_EQ(run("reduce --L 2 --n 1").code, 2); }

TEST_F(CliTest, CapacityError) {
  const Result r = run("verify rtt --L 5", "BPL_MAX_L=4");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("capacity"), std::string::npos);
}

TEST_F(CliTest, OmegaReportTables) {
  const Result r = run("omega --n 2 --L 3 --out " + (dir_ / "omega.json").string());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = read_json("omega.json");
  EXPECT_EQ(doc["tables"]["omega"]["commutator_norms"].size(), 4u);
  EXPECT_EQ(doc["tables"]["omega"]["joint_spectrum"].size(), 6u);
  EXPECT_TRUE(doc["tables"].contains("eigk"));
  EXPECT_TRUE(doc["summary"]["passed"].get<bool>());
  for (const auto& c : doc["checks"]) {
    EXPECT_TRUE(c.contains("tolerance"));
    EXPECT_TRUE(c.contains("wall_ms"));
  }
}

TEST_F(CliTest, ChecksAreSortedByName) {
  const Result r = run("dwbc --L 3 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  std::string prev;
  for (const auto& c : doc["checks"]) {
    EXPECT_LE(prev, c["name"].get<std::string>());
    prev = c["name"];
  }
}

TEST_F(CliTest, DeterministicNumbers) {
  auto strip = [](nlohmann::json doc) {
    for (auto& c : doc["checks"]) c.erase("wall_ms");
    return doc.dump();
  };
  const Result a = run("pde --L 3 --n 2 --seed 9 --json");
  const Result b = run("pde --L 3 --n 2 --seed 9 --json");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(strip(nlohmann::json::parse(a.out)), strip(nlohmann::json::parse(b.out)));
}

TEST_F(CliTest, EverySubcommandPasses) {
  for (const char* args : {"verify rtt", "verify off --n 2", "spectrum", "fz --L 4 --n 2", "omega extract",
                           "omega eigk", "omega compare", "pde residual", "pde special", "reduce --L 4 --n 2",
                           "dwbc partition", "dwbc pde --L 4", "dwbc upsilon --L 4", "all"}) {
    const Result r = run(args);
    EXPECT_EQ(r.code, 0) << args << "\n" << r.out;
  }
}
