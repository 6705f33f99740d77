#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "hodgefan/serialization.hpp"
#include "hodgefan/suites.hpp"

using namespace hodgefan;

namespace {

RunConfig parse_string(const std::string& text) {
  std::istringstream in(text);
  return config_parse(in);
}

}  // namespace

TEST_CASE("empty configuration yields full defaults") {
  RunConfig cfg = parse_string("");
  CHECK(cfg.model.n == 1);
  CHECK(cfg.model.M == 8);
  CHECK(cfg.model.tol == 1e-10);
  CHECK(cfg.model.lambdas.size() == 12);  // +-2^{-2..3}
  CHECK(cfg.model.lambdas.front() == -8.0);
  CHECK(cfg.model.lambdas.back() == 8.0);
  CHECK(cfg.norms.J == 8);
  CHECK(cfg.format == "json");
  CHECK(cfg.suites == std::vector<std::string>{"all"});
  CHECK(cfg.seed == 1);
}

TEST_CASE("configuration overrides are applied") {
  RunConfig cfg = parse_string(
      "[model]\nn = 2\nM = 6\n"
      "[fan]\nlambda_pow_min = -1\nlambda_pow_max = 1\nm_max = 5\n"
      "[norms]\ntau = 1.5\nJ = 6\n"
      "[run]\nseed = 42\nformat = csv\nsuites = exterior, fan-eigen\n");
  CHECK(cfg.model.n == 2);
  CHECK(cfg.model.M == 6);
  CHECK(cfg.model.lambdas.size() == 6);
  CHECK(cfg.fan.m_max == 5);
  CHECK(cfg.norms.tau == 1.5);
  CHECK(cfg.norms.J == 6);
  CHECK(cfg.seed == 42);
  CHECK(cfg.format == "csv");
  CHECK(cfg.suites == std::vector<std::string>({"exterior", "fan-eigen"}));
}

TEST_CASE("validation problems are aggregated into one report") {
  try {
    parse_string("[model]\nM = 2\n[run]\nformat = xml\nsuites = nope\n");
    FAIL("expected configuration errors");
  } catch (const std::invalid_argument& ex) {
    const std::string msg = ex.what();
    CHECK(msg.find("model.M") != std::string::npos);
    CHECK(msg.find("run.format") != std::string::npos);
    CHECK(msg.find("nope") != std::string::npos);
  }
}

TEST_CASE("parse errors carry line information") {
  try {
    parse_string("[model]\nthis line has no equals sign\n");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& ex) {
    CHECK(std::string(ex.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("explicit lambda list overrides the geometric grid") {
  RunConfig cfg = parse_string("[model]\nlambdas = -1.0, 0.5, 2.0\n");
  CHECK(cfg.model.lambdas == std::vector<double>({-1.0, 0.5, 2.0}));
  CHECK_THROWS_AS(parse_string("[model]\nlambdas = 1.0, 0.0\n"), std::invalid_argument);
}

TEST_CASE("report rendering: canonical order, pass rule, empty lists") {
  CHECK(reports_to_json({}) == "[]\n");
  CHECK(reports_to_csv({}) == "suite,check,anchor,max_error,tolerance,pass,runtime_ms\n");

  std::vector<SuiteReport> reports;
  reports.push_back(SuiteReport::make("b-suite", "z", "anchor.z", 0.5, 1.0, 3.0));
  reports.push_back(SuiteReport::make("a-suite", "y", "anchor.y", 2.0, 1.0, 4.0));
  reports.push_back(SuiteReport::make("a-suite", "x", "anchor.x", 1e-14, 1e-10, 5.0));
  CHECK(reports[0].pass);
  CHECK_FALSE(reports[1].pass);
  CHECK_FALSE(all_pass(reports));

  const std::string csv = reports_to_csv(reports);
  const auto posAX = csv.find("a-suite,x");
  const auto posAY = csv.find("a-suite,y");
  const auto posBZ = csv.find("b-suite,z");
  REQUIRE(posAX != std::string::npos);
  CHECK(posAX < posAY);
  CHECK(posAY < posBZ);
  CHECK(csv.find("a-suite,y,anchor.y,2,1,false,4") != std::string::npos);

  CHECK_THROWS_AS(report_render(reports, "xml"), std::invalid_argument);
}

TEST_CASE("suppressing timing makes rendering independent of runtimes") {
  std::vector<SuiteReport> a = {SuiteReport::make("s", "c", "anchor", 0.1, 1.0, 123.0)};
  std::vector<SuiteReport> b = {SuiteReport::make("s", "c", "anchor", 0.1, 1.0, 456.0)};
  CHECK(reports_to_json(a, false) == reports_to_json(b, false));
  CHECK(reports_to_csv(a, false) == reports_to_csv(b, false));
  CHECK(reports_to_json(a, true) != reports_to_json(b, true));
}

TEST_CASE("identical seed gives byte-identical reports") {
  RunConfig cfg = parse_string("[fan]\nlambda_pow_min = -1\nlambda_pow_max = 1\nm_max = 8\n");
  cfg.seed = 7;
  const auto r1 = run_suite("decomposition", cfg);
  const auto r2 = run_suite("decomposition", cfg);
  CHECK(reports_to_json(r1, false) == reports_to_json(r2, false));
  CHECK(reports_to_csv(r1, false) == reports_to_csv(r2, false));
}

TEST_CASE("core suites pass under the default configuration") {
  RunConfig cfg = parse_string("[fan]\nlambda_pow_min = -1\nlambda_pow_max = 1\nm_max = 10\n");
  for (const std::string name : {"exterior", "operators", "fan-eigen", "decomposition"}) {
    const auto reports = run_suite(name, cfg);
    CHECK(!reports.empty());
    for (const auto& r : reports) {
      INFO(r.suite, "/", r.check, " max_error=", r.max_error);
      CHECK(r.pass);
      CHECK(r.suite == name);
      CHECK(!r.anchor.empty());
    }
  }
  CHECK_THROWS_AS(run_suite("unknown", cfg), std::invalid_argument);
}

TEST_CASE("fan table has one row per grid point") {
  RunConfig cfg = parse_string("[fan]\nlambda_pow_min = 0\nlambda_pow_max = 1\nm_max = 3\n");
  const std::string csv = fan_table_csv(cfg);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "lambda,m,xi,a,q_pp,q_pm,q_mp,q_mm,eig_minus,eig_zero,eig_plus,"
        "res_minus,res_zero,res_plus");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4 * 4);  // 4 lambda values, m = 0..3
}

TEST_CASE("word serialization round trip") {
  BasisWord w;
  w.n = 3;
  w.holo = index_mask({1, 3});
  w.anti = index_mask({2});
  w.theta = true;
  const json j = word_to_json(w);
  CHECK(word_from_json(j, 3) == w);
  CHECK_THROWS_AS(word_from_json(json::array({{5}, json::array(), false}), 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(word_from_json(json::array({{1}}), 3), std::invalid_argument);
}

TEST_CASE("pointwise form serialization round trip") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  Form f(2);
  for (const auto& w : bidegree_basis(2, 1, 1)) f.add(w, cd(nd(rng), nd(rng)));
  const Form back = form_from_json(form_to_json(f));
  CHECK((back - f).norm() < 1e-15);
}

TEST_CASE("spectral field serialization round trip") {
  ModelConfig mc = ModelConfig::defaults();
  mc.lambdas = {-1.0, 1.0};
  ModelPtr model = build_model(mc);
  std::mt19937_64 rng(11);
  FormField omega = random_safe_one_form(model, rng, 1);

  const json j = form_field_to_json(omega);
  const FormField back = form_field_from_json(model, j);
  CHECK(norm(back - omega) < 1e-15 * norm(omega));

  ModelConfig other = mc;
  other.n = 2;
  CHECK_THROWS_AS(form_field_from_json(build_model(other), j), std::invalid_argument);
}
