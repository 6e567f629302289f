#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfforge/errors.hpp"
#include "dfforge_cli/app.hpp"
#include "dfforge_cli/commands.hpp"

using namespace dfforge;
using namespace dfforge::cli;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
  json report() const { return json::parse(out); }
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("dfforge_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Config, DefaultsAndMerging) {
  RunConfig c = RunConfig::defaults();
  EXPECT_EQ(c.seed(), 1u);
  c.merge(json{{"seed", 9}, {"levi_scan", {{"n_samples", 50}}}});
  EXPECT_EQ(c.seed(), 9u);
  EXPECT_EQ(c.levi_scan().n_samples, 50u);
  EXPECT_THROW(c.merge(json{{"no_such_key", 1}}), UsageError);
  EXPECT_THROW(c.merge(json{{"levi_scan", {{"n_samples", "many"}}}}), UsageError);
  c.merge(json{{"weight", {{"C", "auto"}}}});
  EXPECT_EQ(c.at("weight.C"), "auto");
}

TEST(Config, FileWithComments) {
  const auto p = temp_file("cfg.json", "{\n  // override the seed\n  \"seed\": 42\n}\n");
  RunConfig c = RunConfig::defaults();
  c.merge_file(p.string());
  EXPECT_EQ(c.seed(), 42u);
  EXPECT_THROW(c.merge_file("/nonexistent/dfforge.json"), UsageError);
}

TEST(Config, CollarSpec) {
  RunConfig c = RunConfig::defaults();
  apply_collar_spec(c, "n=100,depths=2:4,bisect_tol=1e-3");
  const CollarSpec s = c.collar();
  EXPECT_EQ(s.n_boundary, 100u);
  EXPECT_EQ(s.depth_exponents, (std::vector<double>{2, 4}));
  EXPECT_EQ(s.bisect_tol, 1e-3);
  EXPECT_THROW(apply_collar_spec(c, "depth=3"), UsageError);
  EXPECT_THROW(apply_collar_spec(c, "n"), UsageError);
}

TEST(Commands, ParseHelpers) {
  EXPECT_EQ(parse_kv("a=1,b=2.5").at("b"), 2.5);
  EXPECT_THROW(parse_kv("a=one"), UsageError);
  EXPECT_THROW(parse_kv("a"), UsageError);
  const CatalogEntry e = make_entry("exp_flat");
  EXPECT_NEAR(parse_curve("circle:r=0.5,wr=0.1", e).pos(0.0)[0], 0.5, 1e-15);
  EXPECT_THROW(parse_curve("circle:r=-1", e), UsageError);
  EXPECT_THROW(parse_curve("spiral", e), UsageError);
  const auto p = temp_file("curve.json",
                           R"({"closed": true, "points": [[1,0,0,0],[0,1,0,0],[-1,0,0,0],[0,-1,0,0],[0.7,-0.7,0,0]]})");
  EXPECT_TRUE(parse_curve("file:" + p.string(), e).closed());
}

TEST(Report, PlotDataAndMissingSeries) {
  Report r;
  r.command = "x";
  EXPECT_THROW(emit_plot_data(make_body(r, RunConfig::defaults()), "eta_vs_depth"), SeriesMissing);
  r.add_series("s", {"a", "b"}, {{1, 0.5}, {"t", 2.25}});
  const std::string csv = emit_plot_data(make_body(r, RunConfig::defaults()), "s");
  EXPECT_EQ(csv, "a,b\n1,0.5\nt,2.25\n");
}

TEST(Cli, CatalogListExitsZero) {
  const CliRun r = run_cli({"catalog", "list"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = r.report();
  EXPECT_EQ(j["body"]["schema"], kSchemaVersion);
  EXPECT_EQ(j["body"]["results"]["names"].size(), catalog_names().size());
  EXPECT_TRUE(j["header"].contains("timestamp"));
  EXPECT_EQ(j["body"]["config"]["command"]["name"], "catalog");
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli({}).code, kExitError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run_cli({"df-estimate", "--domain", "nope"}).code, kExitError);
  EXPECT_EQ(run_cli({"df-estimate", "--family", "fh:C=1,gamma=2"}).code, kExitError);
  EXPECT_EQ(run_cli({"levi-scan", "--n", "abc"}).code, kExitError);
  EXPECT_EQ(run_cli({"catalog", "list", "--csv", "/tmp/x.csv"}).code, kExitError);
  const CliRun r = run_cli({"catalog", "list", "--csv", "/tmp/dfforge_x.csv", "--series", "nothing"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("SeriesMissing"), std::string::npos);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

TEST(Cli, FailedCheckExitsTwo) {
  const auto p = temp_file("strict.json", R"({"diff": {"tolerances": {"nest": 1e-30}}})");
  const CliRun r = run_cli({"--config", p.string(), "decompose-check", "--domain", "ball", "--points", "5", "--pairs", "4"});
  EXPECT_EQ(r.code, kExitCheckFailed) << r.err;
  EXPECT_EQ(r.report()["body"]["status"], "check_failed");
}

TEST(Cli, BallEstimateIsOne) {
  const CliRun r = run_cli({"df-estimate", "--domain", "ball", "--n", "200"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.report()["body"]["results"]["entries"][0]["eta_hat"], 1.0);
}

TEST(Cli, EtaVersusDepthSeriesIsNonincreasingForTheWorm) {
  const auto csv = std::filesystem::temp_directory_path() / "dfforge_eta.csv";
  const CliRun r = run_cli({"--csv", csv.string(), "--series", "eta_vs_depth", "df-estimate", "--domain", "worm", "--n", "500"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "recipe,log10_depth_rel,eta_collar,eta_level");
  double prev = 2.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const double eta = std::stod(line.substr(line.find(',', line.find(',') + 1) + 1));
    EXPECT_LE(eta, prev);
    prev = eta;
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST(Cli, LeviAlongTheFlatCircleIsZero) {
  const CliRun r = run_cli({"transport-solve", "--domain", "exp_flat", "--rhs", "one"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = emit_plot_data(r.report(), "levi_along_curve");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "index,arc_length,levi,levi_unnormalized,abs_hess_LN");
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    EXPECT_NEAR(v[2], 0.0, 1e-12);
  }
}

TEST(Cli, OutputFileAndWarnings) {
  const auto out = std::filesystem::temp_directory_path() / "dfforge_out.json";
  const CliRun r = run_cli({"--out", out.string(), "catalog", "describe", "worm"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  const json j = json::parse(in);
  EXPECT_EQ(j["body"]["results"]["bounds"]["pi_over"], 0.5);
  EXPECT_FALSE(j["body"]["warnings"].empty());
  EXPECT_NE(r.err.find("warning:"), std::string::npos);
}

TEST(Cli, IdenticalConfigsGiveIdenticalBodies) {
  const std::vector<std::string> args{"df-estimate", "--domain", "exp_flat", "--n", "200", "--family", "raw;fh:C=1,delta=0.1"};
  std::vector<std::string> a = args, b = args;
  a.insert(a.begin(), {"--threads", "1"});
  b.insert(b.begin(), {"--threads", "4"});
  const CliRun ra = run_cli(a), rb = run_cli(b);
  ASSERT_EQ(ra.code, kExitOk) << ra.err;
  EXPECT_EQ(body_text(ra.report()), body_text(rb.report()));
  const CliRun rc = run_cli({"--seed", "2", "df-estimate", "--domain", "exp_flat", "--n", "200", "--family", "raw;fh:C=1,delta=0.1"});
  EXPECT_NE(body_text(ra.report()), body_text(rc.report()));
}
