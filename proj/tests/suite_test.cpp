#include "pdlab/suite.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "test_util.hpp"

using namespace pdlab;

namespace {

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value)
      ::setenv("PDLAB_THREADS", value, 1);
    else
      ::unsetenv("PDLAB_THREADS");
  }
  ~EnvGuard() { ::unsetenv("PDLAB_THREADS"); }
};

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST(Parallel, ThreadBudgetHonorsEnv) {
  {
    EnvGuard env("3");
    EXPECT_EQ(thread_budget(), 3);
  }
  {
    EnvGuard env("0");  // invalid: fall back to hardware
    EXPECT_GE(thread_budget(), 1);
  }
  {
    EnvGuard env("12banana");  // trailing junk: fall back
    EXPECT_GE(thread_budget(), 1);
  }
  EnvGuard env(nullptr);
  EXPECT_GE(thread_budget(), 1);
}

TEST(Parallel, ForCoversEveryIndexOnce) {
  EnvGuard env("4");
  std::vector<std::atomic<int>> hits(257);
  for (auto& h : hits) h.store(0);
  parallel_for(257, [&](int i) { hits[i].fetch_add(1); });
  for (int i = 0; i < 257; ++i) EXPECT_EQ(hits[i].load(), 1) << i;
}

TEST(Parallel, ForPropagatesTheFirstException) {
  EnvGuard env("4");
  EXPECT_THROW(
      parallel_for(64,
                   [&](int i) {
                     if (i == 13) throw Error("boom at 13");
                   }),
      Error);
}

TEST(CertifyGraph, AutoPolicyIsFiniteAndDeterministic) {
  auto g = generate({.family = "path", .level = 12});
  CertifyOptions opt;
  auto a = certify_graph(g, opt);
  ASSERT_FALSE(a.balls.empty());
  EXPECT_GE(a.doubling.constant, 1.0);
  for (const CertBallRecord& rec : a.balls) {
    EXPECT_FALSE(rec.pi.infinite);
    EXPECT_FALSE(rec.cs.infinite);
    EXPECT_TRUE(std::isfinite(rec.cap.value));
  }
  auto b = certify_graph(g, opt);
  EXPECT_EQ(cert_report_to_json(a).dump(), cert_report_to_json(b).dump());
}

TEST(CertifyGraph, ScheduleIndependent) {
  // Slot-deterministic seeds: worker count must not change any output bit.
  auto g = testutil::make_grid(6, 6);
  CertifyOptions opt;
  opt.balls = {{7, 1.5}, {14, 2.0}, {21, 2.5}};
  std::string serial, parallel;
  {
    EnvGuard env("1");
    serial = cert_report_to_json(certify_graph(g, opt)).dump();
  }
  {
    EnvGuard env("4");
    parallel = cert_report_to_json(certify_graph(g, opt)).dump();
  }
  EXPECT_EQ(serial, parallel);
}

TEST(SuiteConfig, DefaultsFromEmptyObject) {
  auto cfg = suite_config_from_json(nlohmann::json::object());
  EXPECT_TRUE(cfg.families.empty());
  EXPECT_EQ(cfg.p, std::vector<double>{2.0});
  EXPECT_EQ(cfg.beta, std::vector<double>{2.0});
  EXPECT_EQ(cfg.lambda_pi, 8.0);
  EXPECT_EQ(cfg.lambda_whitney, 8.0);
  EXPECT_EQ(cfg.eta, 0.5);
  EXPECT_TRUE(cfg.balls.empty());
  EXPECT_TRUE(cfg.run.axioms);
  EXPECT_FALSE(cfg.run.cover);
  EXPECT_EQ(cfg.run.blend_trials, 0);
}

TEST(SuiteConfig, RejectsInvalidValues) {
  using nlohmann::json;
  EXPECT_THROW(suite_config_from_json(json{{"p", 0.5}}), PreconditionError);
  EXPECT_THROW(suite_config_from_json(json{{"p", json::array({2.0, 1.0})}}),
               PreconditionError);
  EXPECT_THROW(suite_config_from_json(json{{"familes", json::array()}}),
               PreconditionError);
  EXPECT_THROW(suite_config_from_json(json{{"lambda_whitney", 4.0}}), PreconditionError);
  EXPECT_THROW(suite_config_from_json(json{{"eta", 1.5}}), PreconditionError);
  EXPECT_THROW(
      suite_config_from_json(json{{"balls", json::array({json::array({0, -1.0})})}}),
      PreconditionError);
  EXPECT_THROW(suite_config_from_json(json{{"run", {{"blend_trials", -2}}}}),
               PreconditionError);
  EXPECT_THROW(suite_config_from_json(json{{"run", {{"covr", true}}}}),
               PreconditionError);
  try {
    suite_config_from_json(json{{"p", 0.5}});
    FAIL() << "expected validation failure";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("0.5"), std::string::npos);
  }
}

TEST(SuiteConfig, ParseErrorsCarryLineAndColumn) {
  const std::string path =
      write_temp("broken_config.json", "{\n  \"p\": [2.0],\n  \"beta\": oops\n}\n");
  try {
    parse_json_file(path);
    FAIL() << "expected a parse failure";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("broken_config.json:3:"), std::string::npos) << what;
  }
}

TEST(RunSuite, EmptyFamilyListPasses) {
  SuiteConfig cfg;
  auto result = run_suite(cfg);
  EXPECT_TRUE(result.pass);
  EXPECT_TRUE(result.units.empty());
}

TEST(RunSuite, PathCapacityOracle) {
  // B(0, 5/2) on the 8-edge path: three-edge condenser gap, uniform
  // mu = 1/9, so C_cap = 3^{1-p} * 6.25 / (1/3).
  SuiteConfig cfg;
  cfg.families = {{.family = "path", .level = 8}};
  cfg.p = {1.5, 2.0};
  cfg.balls = {{0, 2.5}};
  auto result = run_suite(cfg);
  ASSERT_EQ(result.units.size(), 1u);
  const SuiteUnit& unit = result.units[0];
  EXPECT_TRUE(unit.pass) << (unit.failures.empty() ? "" : unit.failures[0]);
  ASSERT_EQ(unit.axioms.size(), 2u);
  EXPECT_TRUE(unit.axioms[0].pass());
  ASSERT_EQ(unit.certs.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const double p = cfg.p[i];
    const double expected = std::pow(3.0, 1.0 - p) * 6.25 * 3.0;
    ASSERT_EQ(unit.certs[i].balls.size(), 1u);
    EXPECT_NEAR(unit.certs[i].balls[0].cap.value, expected, 1e-8 * expected) << p;
  }
}

TEST(RunSuite, FullPipelinesOnGasket) {
  SuiteConfig cfg;
  cfg.families = {{.family = "gasket", .level = 2}};
  cfg.run.cover = true;
  cfg.run.partition = true;
  cfg.run.equivalence = true;
  cfg.run.blend_trials = 3;
  auto result = run_suite(cfg);
  ASSERT_EQ(result.units.size(), 1u);
  const SuiteUnit& unit = result.units[0];
  EXPECT_TRUE(unit.pass) << (unit.failures.empty() ? "" : unit.failures[0]);
  EXPECT_TRUE(unit.cover_run);
  EXPECT_TRUE(unit.cover_cert.pass());
  ASSERT_EQ(unit.blends.size(), 1u);
  EXPECT_TRUE(unit.blends[0].boundary_exact);
  ASSERT_EQ(unit.equivalences.size(), 1u);
  EXPECT_TRUE(unit.equivalences[0].pass);
  ASSERT_FALSE(unit.warnings.empty());  // renormalization caveat propagates

  auto j = suite_unit_to_json(unit, cfg);
  EXPECT_EQ(j["schema"], "pdirichlet-report/1");
  EXPECT_EQ(j["kind"], "suite-unit");
  EXPECT_TRUE(j.contains("cover"));
  EXPECT_TRUE(j.contains("partitions"));
  EXPECT_TRUE(j.contains("blends"));
  EXPECT_TRUE(j.contains("equivalence"));
  ASSERT_TRUE(j.contains("certs"));
  EXPECT_EQ(j["certs"][0]["family"], "gasket");

  const std::string csv = suite_csv(result);
  EXPECT_NE(csv.find("c_pi_method"), std::string::npos);
  EXPECT_NE(csv.find("gasket,2,"), std::string::npos);
}

TEST(RunSuite, GenerationErrorsAreRecordedNotThrown) {
  SuiteConfig cfg;
  cfg.families = {{.family = "carpet", .level = 9}, {.family = "path", .level = 3}};
  auto result = run_suite(cfg);
  EXPECT_FALSE(result.pass);
  ASSERT_EQ(result.units.size(), 2u);
  EXPECT_FALSE(result.units[0].pass);
  ASSERT_FALSE(result.units[0].failures.empty());
  EXPECT_NE(result.units[0].failures[0].find("carpet level"), std::string::npos);
  EXPECT_TRUE(result.units[1].pass);  // the suite keeps going
}

TEST(RunSuiteFiles, WritesReportsAndSummary) {
  const std::string config = write_temp("suite_config.json", R"({
    "families": [{"family": "path", "level": 6}],
    "p": [2.0],
    "balls": [[0, 2.5]]
  })");
  const std::string out_dir = ::testing::TempDir() + "pdlab_suite_out";
  EXPECT_EQ(run_suite_files(config, out_dir), 0);

  auto rep = parse_json_file(out_dir + "/path_6.json");
  EXPECT_EQ(rep["schema"], "pdirichlet-report/1");
  EXPECT_TRUE(rep["pass"].get<bool>());

  std::ifstream csv(out_dir + "/summary.csv");
  ASSERT_TRUE(csv.good());
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header.rfind("family,level,p,beta", 0), 0u);

  const std::string bad = write_temp("bad_config.json", R"({"p": [0.5]})");
  EXPECT_THROW(run_suite_files(bad, out_dir), PreconditionError);
}
