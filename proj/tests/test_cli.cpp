#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <qboson/cli.hpp>

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "qboson");
  std::ostringstream out, err;
  const int code = qboson::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(QBOSON_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, Normalize) {
  const CliRun r = run({"normalize", "--algebra", "wq", "--type", "A1", "e1*f1*e1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "q^-2 * f1*e1^2 + e1\n");
}

TEST(Cli, Pair) {
  const CliRun r = run({"pair", "e1^2", "f1^2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 + q^-2\n");
}

TEST(Cli, DeltaAndAntipode) {
  EXPECT_EQ(run({"delta", "--braided", "f1^2"}).out, "f1^2 ⊗ 1 + (1 + q^-2) * f1 ⊗ f1 + 1 ⊗ f1^2\n");
  EXPECT_EQ(run({"antipode", "--algebra", "bq--", "f1^2"}).out, "q^-2 * f1^2\n");
  EXPECT_EQ(run({"antipode", "--inverse", "E1"}).out, "-q^2 * E1*K\n");
}

TEST(Cli, Act) { EXPECT_EQ(run({"act", "E1", "e1"}).out, "q^-3 * e1^2\n"); }

TEST(Cli, JsonFormat) {
  const CliRun r = run({"--format", "json", "normalize", "E1*F1-F1*E1"});
  EXPECT_EQ(r.code, 0);
  const auto j = qboson::json::parse(r.out);
  EXPECT_EQ(j["algebra"], "uq");
  EXPECT_EQ(j["result"], "(K - K^-1)/(q - q^-1)");
}

TEST(Cli, Decompose) {
  const CliRun r = run({"decompose", sample("h2_plus_h0_scrambled.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{ \"2\": 1, \"0\": 1 }\n");
}

TEST(Cli, DecomposeWritesIsomorphism) {
  const auto path = std::filesystem::temp_directory_path() / "qboson_iso_test.json";
  const CliRun r = run({"decompose", sample("a2_rho_plus_0.json"), "--iso-out", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  const auto j = qboson::json::parse(in);
  EXPECT_TRUE(j["verified"].get<bool>());
  EXPECT_EQ(j["multiplicities"]["1,1"], 1);
  std::filesystem::remove(path);
}

TEST(Cli, ProjectAndRho) {
  EXPECT_EQ(run({"project", "--module", sample("h2_plus_h0.json"), "v{0}[2]"}).out, "v{0}[2]\n");
  EXPECT_EQ(run({"rho", "--module", sample("h2_plus_h0.json"), "v{0}[1]"}).out, "f1 ⊗ v{2}[1] + 1 ⊗ v{0}[1]\n");
  EXPECT_EQ(run({"project", "v{0}"}).code, 2);
}

TEST(Cli, Verify) {
  const CliRun r = run({"verify", "--suite", "projector", "--type", "A1", "--max-degree", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(", 0 failed"), std::string::npos);
}

TEST(Cli, InputErrorsExitWithTwo) {
  EXPECT_EQ(run({"normalize", "E1 +"}).code, 2);
  EXPECT_NE(run({"normalize", "E1 +"}).err.find("1:5"), std::string::npos);
  EXPECT_EQ(run({"normalize", "--type", "Z9", "E1"}).code, 2);
  EXPECT_EQ(run({"normalize", "--algebra", "nope", "E1"}).code, 2);
  EXPECT_EQ(run({"pair", "F1", "E1"}).code, 2);
  EXPECT_EQ(run({"decompose", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"--cartan", "[[2,1],[1,2]]", "normalize", "E1"}).code, 2);
}

TEST(Cli, RelationViolationExitsWithOne) {
  std::ifstream in(sample("h2_plus_h0.json"));
  auto j = qboson::json::parse(in);
  j["actions"]["e1"][0]["matrix"][0][0] = "5";
  const auto path = std::filesystem::temp_directory_path() / "qboson_bad_module.json";
  std::ofstream(path) << j.dump();
  const CliRun r = run({"decompose", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("relation"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, DegreeCapFromEnvironment) {
  ::setenv("QBOSON_MAX_DEGREE", "2", 1);
  EXPECT_EQ(run({"verify", "--suite", "yd", "--max-degree", "3"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "yd", "--max-degree", "2"}).code, 0);
  ::setenv("QBOSON_MAX_DEGREE", "junk", 1);
  EXPECT_EQ(run({"verify", "--suite", "yd", "--max-degree", "2"}).code, 2);
  ::unsetenv("QBOSON_MAX_DEGREE");
}

TEST(Cli, HelpExitsCleanly) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decompose"), std::string::npos);
}
