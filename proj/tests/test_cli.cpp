#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string output;
};

Result run_cli(const std::string& args) {
  const std::string cmd = std::string(LSOPT_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("lsopt_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string config(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << "m = 20\nn = 21\nreps = 400\n" << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, NegativeCostIsAConfigError) {
  const auto r = run_cli("solve --config " + config("bad.cfg", "c = -1\n") + " --out " + path("t.bin"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("cost must be positive"), std::string::npos) << r.output;
}

TEST_F(Cli, MissingConfigAndUnknownFlag) {
  EXPECT_EQ(run_cli("solve --config " + path("none.cfg") + " --out " + path("t.bin")).code, 2);
  EXPECT_EQ(run_cli("solve --bogus 1").code, 2);
}

TEST_F(Cli, SolveIsDeterministic) {
  const auto cfg = config("a.cfg", "c = 0.05\n");
  const auto a = run_cli("solve --config " + cfg + " --out " + path("a.bin"));
  const auto b = run_cli("solve --config " + cfg + " --out " + path("b.bin") + " --threads 2");
  ASSERT_EQ(a.code, 0) << a.output;
  ASSERT_EQ(b.code, 0) << b.output;
  const auto checksum = [](const std::string& out) {
    const auto at = out.find("checksum ");
    return out.substr(at, out.find('\n', at) - at);
  };
  EXPECT_EQ(checksum(a.output), checksum(b.output));
  EXPECT_EQ(slurp(path("a.bin")), slurp(path("b.bin")));
  EXPECT_NE(a.output.find("R(H0) 0.5"), std::string::npos);
}

TEST_F(Cli, TraceIsReproducibleJsonLines) {
  const auto cfg = config("t.cfg", "c = 0.01\n");
  ASSERT_EQ(run_cli("solve --config " + cfg + " --out " + path("t.bin")).code, 0);
  const auto first = run_cli("trace --table " + path("t.bin") + " --seed 3 --out " + path("a.jsonl"));
  ASSERT_EQ(first.code, 0);
  ASSERT_EQ(run_cli("trace --table " + path("t.bin") + " --seed 3 --out " + path("b.jsonl")).code, 0);
  ASSERT_EQ(run_cli("trace --config " + cfg + " --seed 3 --out " + path("c.jsonl")).code, 0);
  const auto a = slurp(path("a.jsonl"));
  EXPECT_EQ(a, slurp(path("b.jsonl")));
  EXPECT_EQ(a, slurp(path("c.jsonl")));
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a.rfind("{\"curve\":", 0), 0u) << a.substr(0, 80);
  const auto lines = std::count(a.begin(), a.end(), '\n');
  EXPECT_NE(first.output.find("tau " + std::to_string(lines) + " "), std::string::npos) << first.output;
  EXPECT_NE(a.find("\"step\":0,"), std::string::npos);
}

TEST_F(Cli, ExpensiveTraceIsEmpty) {
  const auto cfg = config("e.cfg", "c = 2\n");
  const auto r = run_cli("trace --config " + cfg + " --out " + path("e.jsonl"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(slurp(path("e.jsonl")).empty());
  EXPECT_NE(r.output.find("tau 0"), std::string::npos);
}

TEST_F(Cli, CompareWritesCsv) {
  const auto r = run_cli("compare --config " + config("c.cfg", "") + " --costs 2,3 --out " + path("c.csv"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(slurp(path("c.csv")),
            "c,optimal_value,optimal_se,lookahead_value,lookahead_se,ratio\n2,0.5,0,0.5,0,1\n3,0.5,0,0.5,0,1\n");
  EXPECT_EQ(run_cli("compare --config " + config("d.cfg", "") + " --costs 0.1,x").code, 2);
}

TEST_F(Cli, EvaluateWritesJson) {
  const auto r = run_cli("evaluate --config " + config("v.cfg", "c = 2\n") + " --policy lookahead --out " + path("v.json"));
  ASSERT_EQ(r.code, 0) << r.output;
  const auto out = slurp(path("v.json"));
  EXPECT_NE(out.find("\"mean_performance\": 0.5"), std::string::npos) << out;
  EXPECT_NE(out.find("\"policy\": \"lookahead\""), std::string::npos) << out;
  EXPECT_EQ(run_cli("evaluate --config " + config("w.cfg", "") + " --policy random").code, 2);
}

TEST_F(Cli, BudgetWritesBothCsvs) {
  const auto r = run_cli("budget --config " + config("b.cfg", "") + " --budgets 0,1 --out " + path("b"));
  ASSERT_EQ(r.code, 0) << r.output;
  const auto v1 = slurp(path("b_v1.csv"));
  const auto v2 = slurp(path("b_v2.csv"));
  EXPECT_EQ(v1.rfind("T,lambda_star,V1\n0,", 0), 0u) << v1;
  EXPECT_EQ(v2.rfind("T,V2_lower,se,V2_upper\n0,0.5,0,0.5", 0), 0u) << v2;
}

TEST_F(Cli, CorruptTableIsARuntimeError) {
  std::ofstream(path("junk.bin")) << "not a table";
  EXPECT_EQ(run_cli("trace --table " + path("junk.bin")).code, 3);
}

}  // namespace
