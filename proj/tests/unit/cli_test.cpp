#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hmvp_app/app.hpp"
#include "hmvp_app/output.hpp"
#include "hmvp_app/reproduce.hpp"

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(HMVP_TEST_DATA) + "/" + name; }

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "harmonic-mvp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = hmvp::app::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const RunResult& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, SolveThreePath) {
  const auto r = run({"solve", "--problem", data("dp3.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# schema_version=1\npoint,value\n", 0), 0u);
  const auto at = r.out.find("\nb,");
  ASSERT_NE(at, std::string::npos) << r.out;
  EXPECT_NEAR(std::stod(r.out.substr(at + 3)), 0.5, 1e-13);
  const auto j = json_of(run({"solve", "--problem", data("dp3.json"), "--format", "json"}));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_LT(j["oracle_max_difference"].get<double>(), 1e-14);
  EXPECT_EQ(j["tables"]["trace"][0]["sup_delta"].get<double>(), 1.0 / 3.0);
}

TEST(Cli, SolveContinuousAndLift) {
  auto j = json_of(run({"solve", "--problem", data("unit_continuous.json"), "--format", "json"}));
  const auto& sol = j["tables"]["solution"];
  EXPECT_EQ(sol.front()["value"].get<double>(), 0.0);
  EXPECT_EQ(sol.back()["value"].get<double>(), 1.0);
  for (std::size_t i = 1; i < sol.size(); ++i) {
    EXPECT_GT(sol[i]["value"].get<double>(), sol[i - 1]["value"].get<double>());
  }
  const auto r = run({"solve", "--problem", data("lift_square.json"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = json_of(r);
  EXPECT_EQ(j["tables"]["radii"].size(), 39u);
}

TEST(Cli, Deterministic) {
  const auto a = run({"solve", "--problem", data("unit_continuous.json"), "--format", "json"});
  const auto b = run({"solve", "--problem", data("unit_continuous.json"), "--format", "json"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, Classify) {
  const auto j = json_of(run({"classify", "--problem", data("classify_reciprocal.json"), "--format", "json"}));
  EXPECT_EQ(j["verdict"], "weakly-harmonic");
  EXPECT_GT(j["tables"]["admissible"].size(), 0u);
}

TEST(Cli, ScanWithSeparateSpace) {
  const auto r = run({"scan-liouville", "--space", data("two_cosh.json"), "--problem", data("scan.json"),
                      "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_NEAR(j["liminf_estimate"].get<double>(), std::sinh(1.0), 1e-3);
  EXPECT_EQ(j["tables"]["scan"].size(), 25u);
}

TEST(Cli, Diagnose) {
  const auto r = run({"diagnose", "--space", data("two_cosh.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("x,r,mu_B,ratio_2B,annulus_ratio"), std::string::npos);
  const auto exp = json_of(run({"diagnose", "--space", data("two_cosh.json"), "--problem",
                                data("diagnose_exp.json"), "--format", "json"}));
  EXPECT_TRUE(exp.contains("doubling_constant"));
}

TEST(Cli, Estimate) {
  const auto r = run({"estimate", "--problem", data("estimate.json"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["constants"]["harnack_strong"], 8.0);
  EXPECT_NEAR(j["constants"]["lipschitz_uniform"].get<double>(), 8.0, 1e-12);
  EXPECT_EQ(j["tables"]["harnack"][0]["pass"], "true");
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, Perron) {
  const auto r = run({"perron", "--problem", data("perron.json"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_TRUE(j["bounded_by_sup_g"].get<bool>());
  EXPECT_TRUE(j["barrier"]["valid"].get<bool>());
  EXPECT_TRUE(j["regularity"]["pass"].get<bool>());
  for (const auto& row : j["tables"]["solution"]) {
    EXPECT_NEAR(row["value"].get<double>(), std::stod(row["point"].get<std::string>()), 1e-6);
  }
}

TEST(Cli, OutputDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "hmvp_cli_test_out";
  std::filesystem::remove_all(dir);
  const auto r = run({"solve", "--problem", data("dp3.json"), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "solution.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "trace.csv"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"solve", "--problem", data("missing.json")}).code, 1);
  EXPECT_EQ(run({"solve", "--problem", data("broken.json")}).code, 1);
  EXPECT_EQ(run({"solve", "--problem", data("bad_eps.json")}).code, 1);
  EXPECT_EQ(run({"solve", "--problem", data("dp3.json"), "--tol", "-1"}).code, 1);
  EXPECT_EQ(run({"solve", "--problem", data("dp3.json"), "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"reproduce", "no-such-example"}).code, 1);
  const auto nc = run({"solve", "--problem", data("nonconvergent.json")});
  EXPECT_EQ(nc.code, 2);
  EXPECT_NE(nc.err.find("numerical"), std::string::npos);
}

TEST(Cli, ReproduceCatalog) {
  const std::vector<std::string> expected{"annular-exp", "dim-2",         "dp-3point",    "entire-exp",
                                          "liouville-cosh", "perron-affine", "weak-1-over-x"};
  EXPECT_EQ(hmvp::app::reproduce_ids(), expected);
  for (const char* id : {"weak-1-over-x", "entire-exp", "annular-exp", "dim-2", "dp-3point"}) {
    const auto r = run({"reproduce", id, "--format", "json"});
    EXPECT_EQ(r.code, 0) << id << ": " << r.out;
    EXPECT_TRUE(json_of(r)["pass"].get<bool>()) << id;
  }
  const auto w = json_of(run({"reproduce", "weak-1-over-x", "--format", "json"}));
  EXPECT_EQ(w["verdict"], "weakly-harmonic");
  EXPECT_FALSE(w["strongly_harmonic"].get<bool>());
}

TEST(Cli, ReproduceLiouvilleCsv) {
  const auto r = run({"reproduce", "liouville-cosh"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# schema_version=1\nr,ratio\n", 0), 0u);
}
