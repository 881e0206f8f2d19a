#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "dist235/abnormal.hpp"
#include "dist235/model.hpp"
#include "dist235/parser.hpp"

using namespace dist235;
using json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  json report() const { return json::parse(out); }
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(DIST235_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string model(const std::string& name) { return std::string(DIST235_DATA_DIR) + "/models/" + name + ".json"; }

}  // namespace

TEST(Cli, FlatCheckIsGeneric) {
  CliRun r = cli("check --model " + model("flat"));
  ASSERT_EQ(r.code, 0);
  json j = r.report();
  EXPECT_EQ(j["schema"], "distribution-report/1");
  EXPECT_EQ(j["verdict"], "pass");
  for (const auto& p : j["points"]) EXPECT_EQ(p["growth"], "(2,3,5)");
}

TEST(Cli, DegenerateModelExitsWith3) {
  CliRun r = cli("check --model " + model("degenerate"));
  EXPECT_EQ(r.code, 3);
  json j = r.report();
  EXPECT_EQ(j["points"][0]["growth"], "(2,2,2)");
  EXPECT_EQ(j["verdict"], "degenerate");
}

TEST(Cli, FlatOracleAgreesOnZero) {
  CliRun r = cli("oracle --model " + model("flat"));
  ASSERT_EQ(r.code, 0);
  for (const auto& p : r.report()["points"])
    for (const auto& v : p["oracle"]) {
      EXPECT_EQ(v["verdict"], "equal");
      EXPECT_EQ(v["oracle"]["A"], "0/1");
      EXPECT_EQ(v["oracle"]["rho"], "0/1");
      EXPECT_EQ(v["oracle"]["weight"], 4);
    }
}

TEST(Cli, ReportIsByteDeterministic) {
  CliRun a = cli("report --model " + model("cubic"));
  CliRun b = cli("report --model " + model("cubic"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputFileMatchesStdout) {
  std::string path = ::testing::TempDir() + "dist235_cli_report.json";
  CliRun a = cli("tangential --model " + model("quartic") + " --output " + path);
  CliRun b = cli("tangential --model " + model("quartic"));
  ASSERT_EQ(a.code, 0);
  EXPECT_TRUE(a.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), b.out);
}

TEST(Cli, RationalsRoundTrip) {
  json j = cli("invariants --model " + model("mixed")).report();
  std::size_t checked = 0;
  for (const auto& p : j["points"]) {
    for (const auto& x : p["q"]) {
      EXPECT_EQ(to_pq_string(parse_rational(x.get<std::string>())), x.get<std::string>());
      ++checked;
    }
    for (const auto& v : p["invariants"]["values"])
      for (const char* key : {"rho", "A"}) {
        std::string s = v[key];
        EXPECT_EQ(to_pq_string(parse_rational(s)), s);
        ++checked;
      }
  }
  EXPECT_EQ(checked, 11u);
}

TEST(Cli, SymbolicInvariantsParseBack) {
  json j = cli("invariants --model " + model("mixed")).report();
  ModelSpec m = load_model(model("mixed"));
  Frame f = adapted_frame(m.x1, m.x2, AdaptedMode::Adapted);
  FiberPolynomial a = fundamental_density(abnormal_data(f, structural_functions(f)));
  ASSERT_EQ(j["invariants"]["A"].size(), 5u);
  for (int k = 0; k <= 4; ++k) {
    RationalFunction back = parse_expression(j["invariants"]["A"][k].get<std::string>(), m.coordinates);
    EXPECT_EQ(back, a.coefficient45(4 - k, k)) << k;
  }
  // Evaluating the listed coefficients reproduces the listed point values.
  const auto& p = j["points"][0];
  std::vector<Rational> q;
  for (const auto& x : p["q"]) q.push_back(parse_rational(x.get<std::string>()));
  for (const auto& v : p["invariants"]["values"]) {
    Rational u4 = parse_rational(v["u"][0].get<std::string>()), u5 = parse_rational(v["u"][1].get<std::string>());
    Rational sum = 0, pow4 = 1;
    for (int k = 4; k >= 0; --k) {
      Rational term = parse_rational(p["invariants"]["A"][k].get<std::string>()) * pow4;
      for (int i = 0; i < k; ++i) term *= u5;
      sum += term;
      pow4 *= u4;
    }
    EXPECT_EQ(to_pq_string(sum), v["A"].get<std::string>());
  }
}

TEST(Cli, CartanReportOnQuartic) {
  CliRun r = cli("cartan --model " + model("quartic"));
  ASSERT_EQ(r.code, 0);
  json j = r.report();
  EXPECT_TRUE(j["cartan"]["structure_equations"]["ok"]);
  const auto& p = j["points"][1]["cartan"];
  EXPECT_EQ(p["tangential"], json({"176/35", "0/1", "0/1", "0/1", "0/1"}));
  EXPECT_EQ(p["residual"], json({"0/1", "0/1", "0/1", "0/1", "0/1"}));
}

TEST(Cli, GaugedCoframeFailsTheVerdict) {
  CliRun r = cli("cartan --model " + model("flat_gauged"));
  EXPECT_EQ(r.code, 1);
  json j = r.report();
  EXPECT_TRUE(j["cartan"]["structure_equations"]["ok"]);
  EXPECT_FALSE(j["cartan"]["identities"]["pi_equals_minus_4_3_alpha3"]);
  EXPECT_EQ(j["verdict"], "fail");
}

TEST(Cli, InputErrorsExitWith2) {
  EXPECT_EQ(cli("check --model /nonexistent.json").code, 2);
  EXPECT_EQ(cli("check --model " + model("flat") + " --point 1,2,x,0,0").code, 2);
  EXPECT_EQ(cli("check --model " + model("flat") + " --point 1,2,3").code, 2);
  EXPECT_EQ(cli("cartan --model " + model("mixed")).code, 2);
  EXPECT_EQ(cli("frame --model " + model("flat") + " --mode sideways").code, 2);
  EXPECT_EQ(cli("check").code, 2);
}

TEST(Cli, PointOverrideAndTextFormat) {
  CliRun r = cli("check --model " + model("cubic") + " --point 0,0,0,0,0 --format text");
  // z' = (y'')^3 loses genericity where y'' = 0.
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("points[0].q = 0/1 0/1 0/1 0/1 0/1"), std::string::npos);
  EXPECT_NE(r.out.find("points[0].growth = (2,3,4)"), std::string::npos);
  EXPECT_EQ(r.out.find("points[1]"), std::string::npos);
}
