// Drives the simplexgeo executable end to end through the shell.

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char ch : text) n += ch == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("simplexgeo-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs `env simplexgeo args` with stdout and stderr captured to files.
  Outcome cli(const std::string& args, const std::string& env = "env -u SIMPLEXGEO_SEED") {
    const fs::path out = dir_ / "stdout";
    const fs::path err = dir_ / "stderr";
    const std::string command = env + " '" SIMPLEXGEO_CLI_PATH "' " + args + " >'" +
                                out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(command.c_str());
    Outcome o;
    o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.out = slurp(out);
    o.err = slurp(err);
    return o;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, FlowExampleProducesMonotoneCsv) {
  const Outcome o = cli("flow --dim 8 --c geometric:0.5 --p0 uniform --t-max 10 --dt 0.01 "
                        "--method closed --format csv");
  ASSERT_EQ(o.exit_code, 0) << o.err;
  EXPECT_EQ(count_lines(o.out), 1002u);
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "t,p_0,p_1,p_2,p_3,p_4,p_5,p_6,p_7,objective,residual_l1");
  EXPECT_NE(o.err.find("PASS"), std::string::npos) << o.err;
}

TEST_F(CliTest, CheckAllPasses) {
  const Outcome o = cli("check-all --dim 16 --seed 7");
  EXPECT_EQ(o.exit_code, 0) << o.out << o.err;
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "check,pass,metric,tolerance");
  EXPECT_EQ(o.out.find(",false,"), std::string::npos) << o.out;
}

TEST_F(CliTest, MissingDimIsConfigError) {
  const Outcome o = cli("flow --c geometric:0.5");
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_NE(o.err.find("'dim'"), std::string::npos) << o.err;
  EXPECT_TRUE(o.out.empty());
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(cli("flow --dim 4 --c geometric:1.5").exit_code, 2);
  EXPECT_EQ(cli("flow --dim 4 --c explicit:1,x").exit_code, 2);
  EXPECT_EQ(cli("flow --dim 4 --c explicit:3,2,1").exit_code, 2);
  EXPECT_EQ(cli("flow --dim 4 --c uniform --method euler").exit_code, 2);
  EXPECT_EQ(cli("flow --dim 4 --c uniform --format xml").exit_code, 2);
  EXPECT_EQ(cli("fly --dim 4").exit_code, 2);
  EXPECT_EQ(cli("").exit_code, 2);
  EXPECT_EQ(cli("bracket --dim 4 --seed -3").exit_code, 2);
  EXPECT_EQ(cli("bracket --dim 4 --config /nonexistent/simplexgeo.json").exit_code, 2);
}

TEST_F(CliTest, SpecParseErrorNamesPosition) {
  const Outcome o = cli("flow --dim 3 --c explicit:1,,2");
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_NE(o.err.find("at position"), std::string::npos) << o.err;
}

TEST_F(CliTest, HelpExitsZero) {
  const Outcome o = cli("--help");
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_NE(o.out.find("--dim"), std::string::npos);
}

TEST_F(CliTest, FailingRunExitsOne) {
  EXPECT_EQ(cli("lp --dim 3 --c explicit:1,1,1").exit_code, 1);
  EXPECT_EQ(cli("flow --dim 3 --c explicit:50,25,0 --method rk4 --dt 1 --t-max 5").exit_code, 1);
}

TEST_F(CliTest, ByteIdenticalOutputForFixedSeed) {
  const std::string args = "check-all --dim 8 --seed 11 --format json --no-timestamp";
  const Outcome a = cli(args);
  const Outcome b = cli(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["seed"], 11);
}

TEST_F(CliTest, SeedFlagOverridesEnvironment) {
  const std::string args = "bracket --dim 5 --format json --no-timestamp";
  const Outcome env_only = cli(args, "env SIMPLEXGEO_SEED=5");
  const Outcome flag = cli(args + " --seed 5");
  const Outcome both = cli(args + " --seed 5", "env SIMPLEXGEO_SEED=9");
  const Outcome other = cli(args, "env SIMPLEXGEO_SEED=9");
  ASSERT_EQ(env_only.exit_code, 0) << env_only.err;
  EXPECT_EQ(env_only.out, flag.out);
  EXPECT_EQ(both.out, flag.out);
  EXPECT_NE(other.out, flag.out);
  EXPECT_EQ(cli(args, "env SIMPLEXGEO_SEED=abc").exit_code, 2);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  const fs::path config = dir_ / "config.json";
  std::ofstream(config) << R"({"dim": 3, "c_spec": "explicit:3,2,1", "tol": 1e-8, "format": "json",
                              "timestamp": false})";
  const Outcome o = cli("lp --config '" + config.string() + "'");
  ASSERT_EQ(o.exit_code, 0) << o.err;
  EXPECT_EQ(nlohmann::json::parse(o.out)["dim"], 3);
  const Outcome csv = cli("lp --config '" + config.string() + "' --format csv");
  ASSERT_EQ(csv.exit_code, 0) << csv.err;
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "t,p_0,p_1,p_2,objective,residual_l1");
}

TEST_F(CliTest, OutFileIsWrittenWholeAndSummaryGoesToStdout) {
  const fs::path out = dir_ / "flow.json";
  const Outcome o = cli("flow --dim 4 --c explicit:4,3,2,1 --t-max 1 --dt 0.1 --format json --out '" +
                        out.string() + "'");
  ASSERT_EQ(o.exit_code, 0) << o.err;
  EXPECT_NE(o.out.find("flow N=4"), std::string::npos) << o.out;
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["t"].size(), 11u);
  EXPECT_TRUE(j.contains("timestamp"));
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir_)) names.push_back(e.path().filename().string());
  for (const auto& name : names) EXPECT_EQ(name.find(".tmp-"), std::string::npos) << name;
}

TEST_F(CliTest, EveryCommandRuns) {
  for (const char* args : {"geodesic --dim 4 --v0 explicit:1,0,0,-1 --t-max 1 --dt 0.25",
                           "lp --dim 4", "isometry --dim 4 --q 3", "bracket --dim 4",
                           "integrability --dim 4 --c explicit:4,3,2,1"}) {
    const Outcome o = cli(args);
    EXPECT_EQ(o.exit_code, 0) << args << "\n" << o.err;
    EXPECT_NE(o.err.find("PASS"), std::string::npos) << args << "\n" << o.err;
  }
}
