#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / "hencky-cli-test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static fs::path write_input(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ostringstream ss;
    ss << std::ifstream(p).rdbuf();
    return ss.str();
  }

  static RunResult run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + HENCKY_CLI_PATH + "\" " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static fs::path dir_;
};

fs::path CliTest::dir_;

constexpr const char* kIdentityF = R"([{"F": [[1,0,0],[0,1,0],[0,0,1]]}])";
constexpr const char* kStretchF = R"([{"F": [[2,0,0],[0,1,0],[0,0,1]]}])";

TEST_F(CliTest, RequiresASubcommand) {
  EXPECT_EQ(run("").code, 2);
}

TEST_F(CliTest, HelpExitsCleanly) {
  const RunResult r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("stress"), std::string::npos);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST_F(CliTest, StressOnIdentityPasses) {
  const fs::path in = write_input("identity.json", kIdentityF);
  const RunResult r = run("stress " + in.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_TRUE(doc[0]["pass"].get<bool>());
  EXPECT_DOUBLE_EQ(doc[0]["sigma_cauchy"][0][0].get<double>(), 0.0);
}

TEST_F(CliTest, StressEmitsKnownCauchyValue) {
  const fs::path in = write_input("stretch.json", kStretchF);
  const RunResult r =
      run("stress --law svk --lambda 0 --mu 1 --rho0 1 " + in.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc[0]["sigma_cauchy"][0][0].get<double>(), 3.0, 1e-12);
  EXPECT_NEAR(doc[0]["sigma_cauchy"][1][1].get<double>(), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(doc[0]["mass_ratio"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(doc[0]["rho"].get<double>(), 0.5);
}

TEST_F(CliTest, StressRecordsDomainErrorsAndKeepsGoing) {
  const fs::path in = write_input("mixed.json", R"([
    {"F": [[1,0,0],[0,1,0],[0,0,0.000000000001]]},
    {"F": [[2,0,0],[0,1,0],[0,0,1]]}
  ])");
  const RunResult r = run("stress " + in.string());
  EXPECT_EQ(r.code, 1);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_FALSE(doc[0]["pass"].get<bool>());
  ASSERT_GE(doc[0]["errors"].size(), 1u);
  EXPECT_NE(doc[0]["errors"][0].get<std::string>().find("det F"), std::string::npos);
  EXPECT_TRUE(doc[1]["pass"].get<bool>());
  EXPECT_DOUBLE_EQ(doc[1]["F"][0][0].get<double>(), 2.0);
}

TEST_F(CliTest, StressMalformedMatrixNamesTheRecord) {
  const fs::path in = write_input(
      "malformed.json", R"([{"F": [[1,0,0],[0,1,0],[0,0,1]]}, {"F": [[1,0,0],[0,1,0],[0,0]]}])");
  const RunResult r = run("stress " + in.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("record 1"), std::string::npos);
}

TEST_F(CliTest, StressRejectsNonJsonInput) {
  const fs::path in = write_input("garbage.json", "this is not json");
  const RunResult r = run("stress " + in.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not valid JSON"), std::string::npos);
}

TEST_F(CliTest, UnknownLawIsAUsageError) {
  const fs::path in = write_input("identity2.json", kIdentityF);
  const RunResult r = run("stress --law ogden " + in.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ogden"), std::string::npos);
}

TEST_F(CliTest, KappaIsReservedForTheHenckyLaw) {
  const fs::path in = write_input("identity3.json", kIdentityF);
  const RunResult r = run("stress --law svk --kappa 1 " + in.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("hencky"), std::string::npos);

  EXPECT_EQ(run("stress --law hencky --kappa 1 --lambda 1 " + in.string()).code, 2);
  EXPECT_EQ(run("stress --law hencky --kappa 1 --mu 1 " + in.string()).code, 0);
}

TEST_F(CliTest, StressPreservesRecordOrder) {
  const fs::path in = write_input("ordered.json", R"([
    {"F": [[1.1,0,0],[0,1,0],[0,0,1]]},
    {"F": [[1.2,0,0],[0,1,0],[0,0,1]]},
    {"F": [[1.3,0,0],[0,1,0],[0,0,1]]}
  ])");
  const RunResult r = run("stress " + in.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_DOUBLE_EQ(doc[0]["F"][0][0].get<double>(), 1.1);
  EXPECT_DOUBLE_EQ(doc[1]["F"][0][0].get<double>(), 1.2);
  EXPECT_DOUBLE_EQ(doc[2]["F"][0][0].get<double>(), 1.3);
}

TEST_F(CliTest, StressCsvFormat) {
  const fs::path in = write_input("identity4.json", kIdentityF);
  const RunResult r = run("stress --format csv " + in.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 12), "record,pass,");
}

TEST_F(CliTest, VerifySmallSweepPasses) {
  const RunResult r = run("verify --samples 20");
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_EQ(doc["samples"].get<int>(), 20);
  ASSERT_EQ(doc["laws"].size(), 3u);

  bool saw_kinematics = false, saw_dexp = false, saw_roundtrip_hencky = false;
  for (const auto& suite : doc["suites"]) {
    const std::string name = suite["name"].get<std::string>();
    saw_kinematics = saw_kinematics || name == "kinematics";
    saw_dexp = saw_dexp || name == "dexp-agreement";
    saw_roundtrip_hencky = saw_roundtrip_hencky || name == "roundtrip[hencky]";
    EXPECT_NE(name, "roundtrip[svk]");  // not invertible through the conjugate
    EXPECT_TRUE(suite["pass"].get<bool>()) << name;
  }
  EXPECT_TRUE(saw_kinematics);
  EXPECT_TRUE(saw_dexp);
  EXPECT_TRUE(saw_roundtrip_hencky);
}

TEST_F(CliTest, VerifyRejectsEmptySweep) {
  EXPECT_EQ(run("verify --samples 0").code, 2);
}

TEST_F(CliTest, VerifyFailsOnTheNegativeControl) {
  const RunResult r = run("verify --law broken-anisotropic --samples 10");
  EXPECT_EQ(r.code, 1);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_FALSE(doc["pass"].get<bool>());
  bool coaxiality_failed = false;
  for (const auto& suite : doc["suites"])
    if (suite["name"].get<std::string>() == "coaxiality[broken-anisotropic]")
      coaxiality_failed = suite["failures"].get<int>() > 0;
  EXPECT_TRUE(coaxiality_failed);
}

TEST_F(CliTest, VerifyIsDeterministicForAGivenSeed) {
  const fs::path a = dir_ / "verify_a.json";
  const fs::path b = dir_ / "verify_b.json";
  ASSERT_EQ(run("verify --samples 15 --seed 7 --output " + a.string()).code, 0);
  ASSERT_EQ(run("verify --samples 15 --seed 7 --output " + b.string()).code, 0);
  const std::string sa = slurp(a), sb = slurp(b);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
}

TEST_F(CliTest, VerifyCsvFormat) {
  const RunResult r = run("verify --samples 10 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "suite,samples,failures,pass,metrics");
}

TEST_F(CliTest, InvertRecoversTheUniaxialState) {
  const fs::path in = write_input("t_uniaxial.json",
                                  R"([{"T": [[1,0,0],[0,0,0],[0,0,0]]}])");
  const RunResult r = run("invert --law hencky --mu 1 --kappa 1 " + in.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 1u);
  EXPECT_TRUE(doc[0]["converged"].get<bool>());
  EXPECT_FALSE(doc[0]["flagged"].get<bool>());
  EXPECT_NEAR(doc[0]["value"].get<double>(), 8.0 / 9.0, 1e-9);
  EXPECT_NEAR(doc[0]["ln_B"][0][0].get<double>(), 16.0 / 9.0, 1e-7);
  EXPECT_LE(doc[0]["roundtrip_residual"].get<double>(), 1e-6);
}

TEST_F(CliTest, InvertFlagsFailedRecordsAndKeepsOrder) {
  const fs::path in = write_input("t_mixed.json", R"([
    {"T": [[0,0,0],[0,0,0],[0,0,0]]},
    {"T": [[-1,0,0],[0,0.1,0],[0,0,0.1]]}
  ])");
  const RunResult r = run("invert --law svk --lambda 0 --mu 1 " + in.string());
  EXPECT_EQ(r.code, 1);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_TRUE(doc[0]["converged"].get<bool>());
  EXPECT_FALSE(doc[0]["flagged"].get<bool>());
  EXPECT_TRUE(doc[1]["flagged"].get<bool>());
  EXPECT_FALSE(doc[1]["error"].is_null());
}

TEST_F(CliTest, InvertRejectsAsymmetricInput) {
  const fs::path in = write_input("t_asym.json",
                                  R"([{"T": [[1,0.6,0],[0.4,1,0],[0,0,1]]}])");
  const RunResult r = run("invert " + in.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not symmetric"), std::string::npos);
}

TEST_F(CliTest, DexpTableIsMonotone) {
  const RunResult r = run("dexp-table --samples 25");
  ASSERT_EQ(r.code, 0) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["monotone"].get<bool>());
  ASSERT_EQ(doc["rows"].size(), 5u);
  EXPECT_GT(doc["rows"][0]["max_rel_error"].get<double>(),
            doc["rows"][2]["max_rel_error"].get<double>());

  const RunResult csv = run("dexp-table --samples 25 --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "nodes,max_rel_error,zero_case_error");
}

TEST_F(CliTest, OutputFlagWritesTheFileInsteadOfStdout) {
  const fs::path in = write_input("identity5.json", kIdentityF);
  const fs::path out = dir_ / "report.json";
  const RunResult r = run("stress --output " + out.string() + " " + in.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const nlohmann::json doc = nlohmann::json::parse(slurp(out));
  EXPECT_TRUE(doc[0]["pass"].get<bool>());
}

}  // namespace
