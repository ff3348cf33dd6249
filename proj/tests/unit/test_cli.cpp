#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sdom_cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = sdom::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kPareto1 = R"({"family": "pareto", "params": {"alpha": 1}})";
const std::string kPareto15 = R"({"family": "pareto", "params": {"alpha": 1.5}})";

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(Cli, HelpAndVersion) {
  const auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("check-sd"), std::string::npos);
  EXPECT_NE(h.out.find("location_scale"), std::string::npos);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.3.0"), std::string::npos);
  EXPECT_EQ(run({"check-h", "--help"}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, sdom::cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, sdom::cli::kUsage);
  EXPECT_EQ(run({"check-h"}).code, sdom::cli::kUsage);
  const auto bad = run({"check-h", "--dist", R"({"family": "pareto", "params": {"alpah": 1}})"});
  EXPECT_EQ(bad.code, sdom::cli::kUsage);
  EXPECT_NE(bad.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"check-h", "--dist", R"({"family": "pareto", "params": {"alpha": -1}})"}).code,
            sdom::cli::kUsage);
  EXPECT_EQ(run({"check-h", "--dist", "/nonexistent/spec.json"}).code, sdom::cli::kUsage);
  EXPECT_EQ(run({"majorize", "--theta", "1,x", "--eta", "1,2"}).code, sdom::cli::kUsage);
  EXPECT_EQ(run({"majorize", "--theta", "1", "--eta", "1"}).code, sdom::cli::kUsage);
  EXPECT_EQ(run({"check-sd", "--dist", kPareto1, "--theta", "1,4", "--eta", "2,3"}).code,
            sdom::cli::kUsage);
  EXPECT_EQ(run({"check-sd", "--dist", kPareto1, "--theta", ".5,.5", "--eta", "1,0", "--n", "10"}).code,
            sdom::cli::kUsage);
}

TEST(Cli, CheckH) {
  const auto in = run({"check-h", "--dist", kPareto1});
  ASSERT_EQ(in.code, 0) << in.err;
  const auto j = json::parse(in.out);
  EXPECT_EQ(j["verdict"]["status"], "In");
  EXPECT_EQ(j["meta"]["command"], "check-h");

  const auto out = run({"check-h", "--dist", kPareto15});
  ASSERT_EQ(out.code, sdom::cli::kNegative) << out.err;
  EXPECT_EQ(json::parse(out.out)["verdict"]["status"], "Out");

  const auto hs = run({"check-h", "--hstar", "--grid-points", "200", "--dist", kPareto1});
  ASSERT_EQ(hs.code, 0) << hs.err;
  EXPECT_EQ(json::parse(hs.out)["hstar"]["status"], "In");
}

TEST(Cli, MajorizeExitCodesAndChain) {
  EXPECT_EQ(run({"majorize", "--theta", "1,4", "--eta", "2,3"}).code, sdom::cli::kNegative);
  const auto r = run({"majorize", "--theta", "4,2,2", "--eta", "5,3,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["majorized"].get<bool>());
  const auto replayed = j["replay"].get<std::vector<double>>();
  const std::vector<double> theta{4, 2, 2};
  ASSERT_EQ(replayed.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(replayed[i], theta[i], 1e-9);
}

TEST(Cli, CheckSdVerdicts) {
  const auto ok = run({"check-sd", "--dist", kPareto1, "--theta", "0.5,0.5", "--eta", "1,0",
                       "--n", "20000", "--seed", "3"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto j = json::parse(ok.out);
  EXPECT_EQ(j["verdict"], "ConsistentWithSD");
  EXPECT_EQ(j["meta"]["config"]["seed"], 3);

  const auto bad = run({"check-sd", "--dist", kPareto15, "--theta", "0.5,0.5", "--eta", "1,0",
                        "--n", "1000000", "--seed", "3"});
  EXPECT_EQ(bad.code, sdom::cli::kNegative) << bad.err;

  const auto star = run({"sd-star", "--dist", kPareto1, "--theta", "1,1", "--n", "20000"});
  EXPECT_EQ(star.code, 0) << star.err;
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> cmds{
      {"check-sd", "--dist", kPareto1, "--theta", "0.5,0.5", "--eta", "0.9,0.1", "--n", "5000", "--seed", "11"},
      {"stable-sample", "--alpha", "0.7", "--beta", "1", "--n", "500", "--seed", "5"},
      {"cp-sim", "--lambda", "0.5", "--severity", kPareto1, "--n", "500", "--seed", "5"},
      {"figure", "--alpha", "0.5", "--n", "1000"},
      {"exact-tail", "--dist", kPareto1, "--a", "0.3", "--x", "1,2,5"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c);
    const auto b = run(c);
    ASSERT_EQ(a.code, 0) << c[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << c[0];
  }
  auto other = cmds[1];
  other.back() = "6";
  EXPECT_NE(run(cmds[1]).out, run(other).out);
}

TEST(Cli, MetadataAndConfigHash) {
  const auto a = run({"exact-tail", "--dist", kPareto1, "--a", "0.3", "--x", "1"});
  const auto b = run({"exact-tail", "--dist", kPareto1, "--a", "0.4", "--x", "1"});
  const auto ja = json::parse(a.out);
  const auto jb = json::parse(b.out);
  EXPECT_EQ(ja["meta"]["tool"], "sdom");
  EXPECT_EQ(ja["meta"]["version"], "0.3.0");
  EXPECT_EQ(ja["meta"]["config"]["a"], 0.3);
  EXPECT_EQ(ja["meta"]["config_hash"].get<std::string>().size(), 16u);
  EXPECT_NE(ja["meta"]["config_hash"], jb["meta"]["config_hash"]);
  EXPECT_LE(ja["results"][0]["error_estimate"].get<double>(), 1e-8);

  const auto csv = run({"stable-sample", "--alpha", "1.5", "--n", "10"});
  std::istringstream in(csv.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# sdom 0.3.0");
  std::getline(in, line);
  EXPECT_EQ(line, "# command: stable-sample");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# config: {", 0), 0u);
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# config_hash: ", 0), 0u);
}

TEST(Cli, FigureRowCount) {
  const auto r = run({"figure", "--alpha", "0.1", "--weights", "1,4,2,3", "--n", "10000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 4u + 1u + 20000u);
  EXPECT_NE(r.out.find("\nx,F1,F2\n"), std::string::npos);
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "sdom_cli_test_out.csv";
  const std::vector<std::string> base{"cp-sim", "--lambda", "2", "--severity", kPareto1, "--n", "200"};
  auto with_out = base;
  with_out.push_back("--out");
  with_out.push_back(path.string());
  const auto to_file = run(with_out);
  ASSERT_EQ(to_file.code, 0) << to_file.err;
  EXPECT_TRUE(to_file.out.empty());
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), run(base).out);
  std::filesystem::remove(path);
}

TEST(Cli, DistFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "sdom_cli_test_dist.json";
  {
    std::ofstream f(path);
    f << R"({"family": "max", "components": [{"family": "pareto", "params": {"alpha": 1}},
                                             {"family": "frechet", "params": {"alpha": 0.5}}]})";
  }
  const auto r = run({"check-h", "--dist", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["verdict"]["status"], "In");
  std::filesystem::remove(path);
}
