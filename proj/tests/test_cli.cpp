#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "masstransport/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "masstransport");
  std::ostringstream out;
  std::ostringstream err;
  const int code = mtp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec(const std::string& name) { return std::string(MTP_SPEC_DIR) + "/" + name; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Golden {
  const char* file;
  std::vector<std::string> args;
};

const std::vector<Golden>& goldens() {
  static const std::vector<Golden> cases{
      {"identity_two_point_exact.csv",
       {"verify-identity", "--spec", spec("two_point.json"), "--mode", "exact", "--horizon", "8"}},
      {"identity_gaussian_mc.csv",
       {"verify-identity", "--spec", spec("gaussian.json"), "--mode", "mc", "--horizon", "3", "--trials", "2000",
        "--seed", "11"}},
      {"transport_two_point.csv", {"transport", "--spec", spec("two_point.json"), "--lo", "-4", "--hi", "4", "--seed", "1"}},
      {"survival_p06_mc.csv",
       {"survival", "--spec", spec("p06_walk.json"), "--mode", "mc", "--horizon", "64", "--trials", "2000", "--seed",
        "7"}},
      {"maximal_rotation_mc.csv",
       {"verify-maximal", "--spec", spec("rotation.json"), "--horizon", "4", "--trials", "1000", "--seed", "2"}},
      {"birkhoff_mixture.csv",
       {"birkhoff", "--spec", spec("mixture_pm.json"), "--n-max", "16", "--trials", "4", "--seed", "3"}},
      {"sample_markov.csv",
       {"sample", "--spec", spec("markov_positive.json"), "--lo", "-2", "--hi", "3", "--trials", "2", "--seed", "5"}},
  };
  return cases;
}

}  // namespace

TEST(Cli, ExactIdentityTableExitsZero) {
  const auto r = run({"verify-identity", "--spec", spec("two_point.json"), "--mode", "exact", "--horizon", "8"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,lhs,rhs,lhs_ci_lo,lhs_ci_hi,rhs_ci_lo,rhs_ci_hi,mode,pass");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",exact,true"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 8);
  EXPECT_NE(r.out.find("2,1/4,1/4,"), std::string::npos);
}

TEST(Cli, TransportChecksPass) {
  const auto r = run({"transport", "--spec", spec("two_point.json"), "--lo", "-4", "--hi", "4", "--seed", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find(",fail"), std::string::npos);
  EXPECT_NE(r.out.find("check_received"), std::string::npos);
}

TEST(Cli, SurvivalReportsTailBound) {
  const auto r = run({"survival", "--spec", spec("p06_walk.json"), "--mode", "mc", "--trials", "20000", "--horizon",
                      "256", "--seed", "7", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto& row = doc["rows"][0];
  EXPECT_TRUE(row["tail_bound"].is_number());
  EXPECT_NEAR(row["estimate"]["mean"].get<double>(), 0.2, 0.02);
}

TEST(Cli, ExactModeOnGaussianIsUsageError) {
  const auto r = run({"verify-identity", "--spec", spec("gaussian.json"), "--mode", "exact"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("exact"), std::string::npos);
}

TEST(Cli, UnknownFlagIsUsageError) {
  const auto r = run({"survival", "--spec", spec("p06_walk.json"), "--bogus", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos) << r.err;
}

TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run({}).code, 2); }

TEST(Cli, BadSpecReportsPath) {
  const auto tmp = std::filesystem::temp_directory_path() / "mtp_cli_bad.json";
  std::ofstream(tmp) << R"({"kind":"IidDiscrete","values":[1,-1],"probabilities":["1/2","oops"]})";
  const auto r = run({"sample", "--spec", tmp.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/probabilities/1"), std::string::npos) << r.err;
  std::filesystem::remove(tmp);
}

TEST(Cli, FailedCheckExitsOne) {
  // Far too short for the averages to settle within 0.05.
  const auto r = run({"birkhoff", "--spec", spec("gaussian.json"), "--n-max", "4", "--trials", "100"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, OutFlagWritesFile) {
  const auto tmp = std::filesystem::temp_directory_path() / "mtp_cli_out.csv";
  const auto r = run({"verify-identity", "--spec", spec("two_point.json"), "--horizon", "3", "--out", tmp.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(read_file(tmp).find("3,1/8,1/8"), std::string::npos);
  std::filesystem::remove(tmp);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::string> base{"verify-identity", "--spec", spec("ma_gaussian.json"), "--mode", "mc",
                                      "--horizon", "4", "--trials", "3000", "--seed", "19"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto four = base;
  four.insert(four.end(), {"--threads", "4"});
  EXPECT_EQ(run(one).out, run(four).out);
}

TEST(Cli, GoldenOutputs) {
  for (const auto& g : goldens()) {
    const auto r = run(g.args);
    EXPECT_EQ(r.code, 0) << g.file << ": " << r.err;
    const auto path = std::filesystem::path(MTP_GOLDEN_DIR) / g.file;
    if (std::getenv("MTP_UPDATE_GOLDEN")) {
      std::ofstream(path, std::ios::binary) << r.out;
      continue;
    }
    EXPECT_EQ(r.out, read_file(path)) << g.file;
  }
}
