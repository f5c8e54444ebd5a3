#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pss/cli.hpp"

namespace {

namespace cli = pss::cli;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "pss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Parse, Defaults) {
  std::ostringstream out;
  std::ostringstream err;
  const char* argv[] = {"pss", "verify"};
  auto parsed = cli::parse_args(2, argv, out, err);
  ASSERT_TRUE(std::holds_alternative<cli::RunConfig>(parsed));
  const auto& cfg = std::get<cli::RunConfig>(parsed);
  EXPECT_EQ(cfg.command, cli::Command::Verify);
  EXPECT_EQ(cfg.module, cli::ModuleChoice::All);
  EXPECT_EQ(cfg.max_weight, 12);
  EXPECT_EQ(cfg.t_max, 20);
  EXPECT_EQ(cfg.format, cli::Format::Text);
  EXPECT_FALSE(cfg.output_path.has_value());
}

TEST(Parse, LemmasDefaultWeight) {
  std::ostringstream out;
  std::ostringstream err;
  const char* argv[] = {"pss", "lemmas"};
  auto parsed = cli::parse_args(2, argv, out, err);
  ASSERT_TRUE(std::holds_alternative<cli::RunConfig>(parsed));
  EXPECT_EQ(std::get<cli::RunConfig>(parsed).max_weight, 6);
}

TEST(ExitCodes, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--module", "Lambda7"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--max-weight", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--max-weight", "-3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"lemmas", "--t-max", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"qseries", "--max-weight", "-1"}).code, cli::kExitUsage);
}

TEST(ExitCodes, HelpIsSuccess) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Verify, TextSummary) {
  const auto r = run({"verify", "--module", "lambda0", "--max-weight", "4"});
  EXPECT_EQ(r.code, cli::kExitOk);
  // (0,0) plus ten pieces with 1 <= k <= n <= 4
  EXPECT_NE(r.out.find("11/11 pieces pass"), std::string::npos);
  EXPECT_NE(r.out.find("PASS Lambda0.kernel_low_charge_structure"), std::string::npos);
}

TEST(Verify, JsonRoundTrip) {
  const auto r = run({"verify", "--max-weight", "5", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const auto j = cli::Json::parse(r.out);
  EXPECT_EQ(j.dump(2) + "\n", r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"run", "pieces", "lemmas", "dims"}));
  EXPECT_EQ(j["run"]["command"], "verify");
  EXPECT_EQ(j["run"]["max_weight"], 5);
  for (const auto& p : j["pieces"]) {
    EXPECT_TRUE(p["equality_ok"].get<bool>());
    EXPECT_FALSE(p.contains("witness"));
    EXPECT_EQ(p["dim_kernel"].get<int>() + p["rank_eval"].get<int>(), p["dim_domain"].get<int>());
  }
  EXPECT_TRUE(j["lemmas"]["Lambda1.kernel_containment_L0_in_L1"].get<bool>());
}

TEST(Verify, PiecesOrderedByWeightThenCharge) {
  const auto r = run({"verify", "--max-weight", "6", "--format", "json"});
  const auto j = cli::Json::parse(r.out);
  std::pair<int, int> prev{-1, -1};
  for (const auto& p : j["pieces"]) {
    const std::pair<int, int> cur{p["idx"]["weight"].get<int>(), p["idx"]["charge"].get<int>()};
    EXPECT_LE(prev, cur);
    prev = cur;
  }
}

TEST(Verify, CsvHeader) {
  const auto r = run({"verify", "--module", "lambda1prime", "--max-weight", "4", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "module_tag,weight,charge,dim_domain,rank_eval,dim_kernel,dim_ideal_piece,containment_ok,equality_ok");
  std::getline(in, line);
  EXPECT_EQ(line, "Lambda1_prime,0,0,1,1,0,0,true,true");
}

TEST(Dims, JsonTotals) {
  const auto r = run({"dims", "--module", "lambda0", "--max-weight", "8", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const auto j = cli::Json::parse(r.out);
  EXPECT_EQ(j["totals"]["Lambda0"].get<std::vector<int>>(), (std::vector<int>{1, 1, 1, 1, 2, 2, 3, 3, 4}));
}

TEST(Lemmas, AllPass) {
  const auto r = run({"lemmas", "--t-max", "8", "--max-weight", "4", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out.rfind("name,ok\n", 0), 0u);
  EXPECT_EQ(r.out.find("false"), std::string::npos);
  EXPECT_NE(r.out.find("square_zero,true"), std::string::npos);
}

TEST(Qseries, Rows) {
  const auto r = run({"qseries", "--max-weight", "10", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("\n4,2,2,1,1,true\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n10,6,6,4,4,true\n"), std::string::npos);
  EXPECT_EQ(r.out.find("false"), std::string::npos);
}

TEST(Qseries, WeightZeroIsOneRow) {
  const auto r = run({"qseries", "--max-weight", "0", "--format", "json"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto j = cli::Json::parse(r.out);
  ASSERT_EQ(j["qseries"].size(), 1u);
  EXPECT_EQ(j["qseries"][0]["lambda0"], 1);
  EXPECT_EQ(j["qseries"][0]["lambda1_prime"], 1);
}

TEST(Output, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "pss_cli_test_out.json";
  std::filesystem::remove(path);
  const auto r = run({"qseries", "--max-weight", "3", "--format", "json", "--out", path.string()});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(cli::Json::parse(buf.str())["qseries"].size(), 4u);
  std::filesystem::remove(path);
}

TEST(Output, UnwritablePath) {
  const auto r = run({"qseries", "--out", "/nonexistent-dir/x.json"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST(Determinism, ByteIdentical) {
  const auto a = run({"verify", "--max-weight", "7", "--format", "json"});
  const auto b = run({"verify", "--max-weight", "7", "--format", "json"});
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
