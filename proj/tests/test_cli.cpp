#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace splitgap;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "splitgap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("splitgap_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, SplitOctic) {
  const CliRun r = run_cli({"split", "--type", "8,3,3,3,3,3,3,3", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["a"], 3);
  EXPECT_EQ(j["b"], 5);
  EXPECT_EQ(j["gap"], 2);
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["sigma"], 12);
  EXPECT_EQ(j["syzygy"]["degree"], 3);
  EXPECT_TRUE(j.contains("method"));
  EXPECT_EQ(j["type"], json::parse("[8,3,3,3,3,3,3,3]"));
}

TEST(Cli, EnumerationCount) {
  CliRun r = run_cli({"exc-enum", "--r", "9", "--dmax", "61", "--count"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1054\n");
  r = run_cli({"exc-enum", "--r", "9", "--dmax", "61", "--format", "table"});
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1054);
  r = run_cli({"exc-enum", "--r", "7"});
  EXPECT_EQ(json::parse(r.out)["classes_with_permutations"], 56);
}

TEST(Cli, HelpAndUsageErrors) {
  CliRun r = run_cli({"split", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--type"), std::string::npos);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"split", "--type", "8,3", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"split"}).code, 2);
  EXPECT_EQ(run_cli({"split", "--type", "8,x,3"}).code, 2);
  EXPECT_EQ(run_cli({"split", "--type", "8,3,3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"split", "--type", "4,3,1,1,1,1,1,1,1,1", "--p", "100"}).code, 2);
  EXPECT_EQ(run_cli({"fatpoints", "--k", "1..2"}).code, 2);
}

TEST(Cli, DomainErrors) {
  CliRun r = run_cli({"split", "--type", "3,1,1,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(run_cli({"param", "--type", "0,0,-1"}).code, 1);
  EXPECT_EQ(run_cli({"exc-enum", "--r", "9"}).code, 1);  // r = 9 needs a degree cap
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"param", "--type", "12,5,5,5,5,3,3,3,3,3", "--seed", "4", "--trace"};
  const CliRun a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["seed"], 4);
  EXPECT_EQ(j["param"]["degree"], 12);
  EXPECT_EQ(j["trace"].size(), j["word"].size());
}

TEST(Cli, EnvironmentOverrides) {
  ::setenv("SPLITGAP_SEED", "9", 1);
  CliRun r = run_cli({"split", "--type", "4,3,1,1,1,1,1,1,1,1"});
  EXPECT_EQ(json::parse(r.out)["seed"], 9);
  r = run_cli({"split", "--type", "4,3,1,1,1,1,1,1,1,1", "--seed", "2"});
  EXPECT_EQ(json::parse(r.out)["seed"], 2);
  ::unsetenv("SPLITGAP_SEED");
  ::setenv("SPLITGAP_P", "65537", 1);
  r = run_cli({"split", "--type", "4,3,1,1,1,1,1,1,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["p"], 65537);
  ::setenv("SPLITGAP_P", "abc", 1);
  EXPECT_EQ(run_cli({"split", "--type", "4,3,1,1,1,1,1,1,1,1"}).code, 2);
  ::unsetenv("SPLITGAP_P");
}

TEST(Cli, ClassifyAndTable) {
  CliRun r = run_cli({"classify", "--type", "4,3,1,1,1,1,1,1,1,1"});
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["exceptional"], true);
  EXPECT_EQ(j["ascenzi"], true);
  EXPECT_EQ(j["predicted_split"]["a"], 1);
  EXPECT_EQ(j["semi_adjoint"], json::parse("[1,1,0,0,0,0,0,0,0,0]"));
  r = run_cli({"classify", "--type", "8,3,3,3,3,3,3,3", "--format", "table"});
  EXPECT_NE(r.out.find("ascenzi"), std::string::npos);
  EXPECT_NE(r.out.find("orbit types"), std::string::npos);
}

TEST(Cli, FatPoints) {
  CliRun r = run_cli({"fatpoints", "--mults", "4,1,1,1,1,1,1,1,1", "--k", "5..7", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["alpha"], 5);
  ASSERT_EQ(j["reports"].size(), 3u);
  EXPECT_EQ(j["reports"][0]["dim_k"], 3);
  EXPECT_EQ(j["reports"][0]["cokernel"], 2);
  r = run_cli({"fatpoints", "--prop43", "8,3,3,3,3,3,3,3,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["alpha"], 11);
}

TEST(Cli, SearchAndSpotCheck) {
  CliRun r = run_cli({"search-conjR", "--type", "4,3,1,1,1,1,1,1,1,1", "--compare"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["result"]["A_dot_E"], 1);
  EXPECT_EQ(j["a_E"], 1);
  EXPECT_EQ(j["matches"], true);
  r = run_cli({"list7-check", "--d", "0..1"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j["e7_orbit_classes"], 56);
  EXPECT_EQ(j["all_match"], true);
}

TEST(Cli, ScanWithResume) {
  const auto full = temp_file("full.jsonl"), part = temp_file("part.jsonl");
  CliRun r = run_cli({"scan-conj9", "--dmax", "14", "--out", full.string(), "--certify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string whole = slurp(full);
  std::istringstream lines(whole);
  std::string line, head;
  for (int i = 0; i < 10 && std::getline(lines, line); ++i) head += line + "\n";
  head += "{\"type\": [9, 4";  // a torn line from an interrupted run
  std::ofstream(part) << head;
  r = run_cli({"scan-conj9", "--dmax", "14", "--out", part.string(), "--certify", "--resume"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(part), whole);
  const std::string last = whole.substr(whole.rfind('\n', whole.size() - 2) + 1);
  const json summary = json::parse(last);
  EXPECT_EQ(summary["summary"]["proved_direction_holds"], true);
  EXPECT_EQ(summary["seed"], 1);
  std::filesystem::remove(full);
  std::filesystem::remove(part);
  EXPECT_EQ(run_cli({"scan-conj9", "--dmax", "5", "--resume"}).code, 2);
}
