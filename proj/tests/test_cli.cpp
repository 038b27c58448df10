#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rrk/cli.hpp"
#include "test_support.hpp"

namespace rrk {
namespace {

using nlohmann::json;
using test_support::TempDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string ten_points() {
  std::string s = "x_1\n";
  for (int i = 0; i < 10; ++i) s += std::to_string(0.3 * i) + "\n";
  return s;
}

TEST(CliCheckPsd, GaussianPasses) {
  TempDir dir;
  const auto r = run_cli({"check-psd", "--kernel", dir.write("k.json", test_support::kGaussianSpec),
                          "--data", dir.write("p.csv", ten_points())});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("is_psd").get<bool>());
  EXPECT_EQ(j.at("n"), 10);
}

TEST(CliCheckPsd, NegativeDistanceFails) {
  TempDir dir;
  const auto r = run_cli({"check-psd", "--kernel", dir.write("k.json", test_support::kNegativeDistanceSpec),
                          "--data", dir.write("p.csv", ten_points())});
  EXPECT_EQ(r.code, cli::kNotPsd);
  EXPECT_LT(json::parse(r.out).at("min_eigenvalue").get<double>(), 0.0);
}

TEST(CliCheckPsd, InjectedAsymmetryFails) {
  TempDir dir;
  cli::RunConfig c;
  c.command = cli::Command::check_psd;
  c.kernel_spec_path = dir.write("k.json", test_support::kGaussianSpec);
  c.data_path = dir.write("p.csv", ten_points());
  c.inject_asymmetry = true;
  std::ostringstream out, err;
  EXPECT_EQ(cli::execute(c, out, err), cli::kNotPsd);
  EXPECT_TRUE(json::parse(out.str()).contains("hermitian_distance"));
}

TEST(CliInputErrors, ExitTwo) {
  TempDir dir;
  const auto k = dir.write("k.json", test_support::kGaussianSpec);
  EXPECT_EQ(run_cli({"check-psd", "--kernel", dir.file("missing.json"), "--data", dir.write("p.csv", ten_points())}).code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"check-psd", "--kernel", k, "--data", dir.file("missing.csv")}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"check-psd", "--kernel", k}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"check-psd", "--kernel", dir.write("bad.json", "{not json"), "--data",
                     dir.file("p.csv")}).code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"fit-differences", "--kernel", k, "--data", dir.write("e.csv", "")}).code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"fit-differences", "--kernel", k, "--data", dir.write("h.csv", "x_1,y_1,d_1\n")}).code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"fit-differences", "--kernel", k, "--data",
                     dir.write("w.csv", "x_1,y_1,d_1,d_2\n0,1,1,1\n")}).code,
            cli::kInputError);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"verify", "--seed", "abc"}).code, cli::kInputError);
  EXPECT_EQ(run_cli({"sip-check", "--p", "1"}).code, cli::kInputError);
}

TEST(CliHelp, ExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, cli::kOk); }

TEST(CliFitDifferences, SingleConstraintThenEval) {
  TempDir dir;
  const auto model = dir.file("model.json");
  const auto r = run_cli({"fit-differences", "--kernel", dir.write("k.json", test_support::kGaussianSpec),
                          "--data", dir.write("d.csv", "x_1,y_1,d_1\n0,1,1\n"), "--ridge", "0",
                          "--out", model});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = json::parse(test_support::read_file(model));
  EXPECT_NEAR(j.at("coefficients")[0][0].get<double>(), 0.7909883534346632, 1e-9);
  EXPECT_EQ(j.at("gauge"), "H_M");

  const auto e = run_cli({"eval", "--model", model, "--data", dir.write("t.csv", "x_1\n0\n1\n")});
  ASSERT_EQ(e.code, cli::kOk) << e.err;
  const auto v = json::parse(e.out).at("values");
  EXPECT_NEAR(v[1][0].get<double>() - v[0][0].get<double>(), 1.0, 1e-9);
}

TEST(CliFitDifferences, AnchorFlag) {
  TempDir dir;
  const auto r = run_cli({"fit-differences", "--kernel", dir.write("k.json", test_support::kGaussianSpec),
                          "--data", dir.write("d.csv", "x_1,y_1,d_1\n0,1,1\n"), "--anchor", "0:5"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("gauge"), "anchored");
}

TEST(CliFitDifferences, InconsistentCycleExitsFour) {
  TempDir dir;
  const auto r = run_cli({"fit-differences", "--kernel", dir.write("k.json", test_support::kGaussianSpec),
                          "--data", dir.write("d.csv", "x_1,y_1,d_1\n0,1,1\n1,0,1\n"), "--ridge", "0"});
  EXPECT_EQ(r.code, cli::kInfeasibleFit);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j.at("feasible").get<bool>());
  EXPECT_NEAR(j.at("residual").get<double>(), std::sqrt(2.0), 1e-9);
}

TEST(CliFitValues, SolvesAndRejectsConflicts) {
  TempDir dir;
  const auto k = dir.write("k.json", test_support::kGaussianSpec);
  EXPECT_EQ(run_cli({"fit-values", "--kernel", k, "--data", dir.write("v.csv", "x_1,v_1\n0,1\n1,2\n")}).code,
            cli::kOk);
  EXPECT_EQ(run_cli({"fit-values", "--kernel", k, "--data", dir.write("c.csv", "x_1,v_1\n0,1\n0,2\n"),
                     "--ridge", "0"}).code,
            cli::kInfeasibleFit);
}

TEST(CliVerify, PassesAndIsByteIdentical) {
  TempDir dir;
  const auto a = run_cli({"verify", "--seed", "7"});
  const auto b = run_cli({"verify", "--seed", "7"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(json::parse(a.out).at("passed").get<bool>());
  ASSERT_EQ(run_cli({"verify", "--seed", "7", "--out", dir.file("r.json")}).code, cli::kOk);
  EXPECT_EQ(test_support::read_file(dir.file("r.json")), a.out);
}

TEST(CliVerify, InjectedAsymmetryFailsOnPsd) {
  cli::RunConfig c;
  c.command = cli::Command::verify;
  c.inject_asymmetry = true;
  std::ostringstream out, err;
  EXPECT_EQ(cli::execute(c, out, err), cli::kVerificationFailed);
  EXPECT_NE(err.str().find("'psd'"), std::string::npos) << err.str();
  EXPECT_EQ(json::parse(out.str()).at("first_failure"), "psd");
}

TEST(CliSipCheck, Report) {
  const auto r = run_cli({"sip-check", "--p", "3", "--dim", "5", "--trials", "500"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("cauchy_schwarz_violations"), 0);
  EXPECT_EQ(j.at("trials"), 500);
  EXPECT_EQ(run_cli({"sip-check", "--trials", "0"}).code, cli::kInputError);
}

}  // namespace
}  // namespace rrk
