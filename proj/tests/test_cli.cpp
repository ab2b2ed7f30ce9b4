#include <gtest/gtest.h>

#include <sstream>

#include "catext/cli.hpp"

using namespace catext;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  json out;
};

CliRun run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream os;
  int code = cli::run(args, in, os);
  return {code, json::parse(os.str())};
}

std::string sample(const std::string& name) { return std::string(CATEXT_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ValidateReportsViolations) {
  CliRun r = run_cli({"validate", "--input", sample("bad_category.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out["status"], "violations");
  EXPECT_FALSE(r.out["witnesses"].empty());
  CliRun ok = run_cli({"validate", "--input", sample("bz4_category.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out["status"], "ok");
}

TEST(Cli, ReportShape) {
  CliRun r = run_cli({"ext-class", "--input", sample("bz4_extension.json")});
  ASSERT_EQ(r.code, 0);
  for (const char* key : {"command", "status", "result", "witnesses", "timing_ms"}) EXPECT_TRUE(r.out.contains(key));
  EXPECT_EQ(r.out["result"]["class"], json::array({1}));
  EXPECT_EQ(r.out["result"]["h2_invariants"], json::array({2}));
}

TEST(Cli, CohomologyOfC2Negation) {
  CliRun r = run_cli({"cohom", "--input", sample("c2_negation_functor.json"), "--degree", "2"});
  ASSERT_EQ(r.code, 0);
  const auto& c = r.out["result"]["cohomology"];
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0]["invariants"], json::array({2}));
  EXPECT_EQ(c[2]["invariants"], json::array({2}));
  CliRun g = run_cli({"group-cohom", "--input", sample("c2_torus.json")});
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(g.out["result"]["cohomology"][1]["stable"], json::array());
  EXPECT_EQ(g.out["result"]["cohomology"][2]["stable"], json::array({2}));
}

TEST(Cli, SplitAndEquivalence) {
  CliRun ns = run_cli({"ext-split", "--input", sample("bz4_extension.json")});
  EXPECT_EQ(ns.code, 0);
  EXPECT_EQ(ns.out["result"]["verdict"], "not split");
  EXPECT_EQ(ns.out["witnesses"][0]["class"], json::array({1}));
  CliRun s = run_cli({"ext-split", "--input", sample("split_extension.json")});
  EXPECT_EQ(s.out["result"]["verdict"], "split");
  EXPECT_TRUE(s.out["result"].contains("section"));
  CliRun e = run_cli({"ext-equiv", "--input", sample("equiv_pair.json")});
  EXPECT_EQ(e.out["result"]["equivalent"], true);
}

TEST(Cli, AdamsAndScalars) {
  CliRun a = run_cli({"adams", "--input", sample("z16_ptoral.json")});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out["result"]["class_order"], 4);
  for (const auto& d : a.out["result"]["degrees"]) EXPECT_EQ(d["realized"], d["in_gamma_m"]);
  CliRun p = run_cli({"adams", "--input", sample("z8_ptoral.json"), "--precision", "5"});
  EXPECT_EQ(p.code, 3);
  EXPECT_EQ(p.out["status"], "refused");
  CliRun z = run_cli({"ext-scalar-aut", "--input", sample("z16_scalar.json")});
  EXPECT_EQ(z.out["result"]["exists"], true);
  CliRun z3 = run_cli({"ext-scalar-aut", "--input", sample("z16_scalar.json"), "--zeta", "3"});
  EXPECT_EQ(z3.out["result"]["exists"], false);
}

TEST(Cli, WeylAndBuild) {
  CliRun w = run_cli({"weyl-h1", "--input", sample("weyl_c2_p3.json")});
  EXPECT_EQ(w.out["result"]["h1_vanishes"], true);
  CliRun b = run_cli({"ext-build", "--input", sample("z9_build.json")});
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(b.out["result"].contains("extension"));
}

TEST(Cli, PsuDemo) {
  CliRun r = run_cli({"psu-demo"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out["result"]["commutator_AB_is_zeta"], true);
  EXPECT_EQ(r.out["result"]["commutator_XY_nontrivial"], true);
  EXPECT_EQ(run_cli({"psu-demo", "--p", "2"}).code, 2);
}

TEST(Cli, MalformedInput) {
  CliRun j = run_cli({"validate"}, "{\"category\": [1, 2,");
  EXPECT_EQ(j.code, 2);
  EXPECT_EQ(j.out["status"], "malformed");
  EXPECT_TRUE(j.out.contains("position"));
  CliRun u = run_cli({"frobnicate"});
  EXPECT_EQ(u.code, 2);
  EXPECT_TRUE(u.out.contains("usage"));
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"validate", "--input", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(run_cli({"ext-class"}, "{}").code, 2);
}

TEST(Cli, RefusalOnCellLimit) {
  CliRun r = run_cli({"cohom", "--input", sample("c2_negation_functor.json"), "--degree", "2", "--max-cells", "3"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out["status"], "refused");
  EXPECT_TRUE(r.out.contains("estimate"));
}

TEST(Cli, DeterministicOutput) {
  for (const auto& f : {"bz4_extension.json", "z16_ptoral.json"}) {
    CliRun a = run_cli({"ext-class", "--input", sample(f)});
    CliRun b = run_cli({"ext-class", "--input", sample(f)});
    a.out.erase("timing_ms");
    b.out.erase("timing_ms");
    EXPECT_EQ(a.out.dump(), b.out.dump());
  }
}
