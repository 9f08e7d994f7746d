#pragma once
// Config-driven laboratory runs: parse a JSON suite config, generate each
// family fixture, certify the selected balls across (p, beta), optionally
// audit covers, partitions and blends, and emit one report per
// (family, level) plus a CSV summary.  Report files carry the schema tag
// "pdirichlet-report/1".

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdlab/certify.hpp"
#include "pdlab/fixtures.hpp"

namespace pdlab {

// --- parallelism ------------------------------------------------------------

/// Worker budget: PDLAB_THREADS when set (clamped to >= 1), else the
/// hardware concurrency, else 1.
inline int thread_budget() {
  if (const char* env = std::getenv("PDLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<int>(std::min(v, 256L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(0), ..., fn(count-1), using up to thread_budget() workers.  Work
/// assignment is dynamic, so results must not depend on execution order.
/// The first exception thrown by any job is rethrown after all workers join.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> bad{false};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count || bad.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        bad.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// --- one-graph certification ------------------------------------------------

struct CertifyOptions {
  double p = 2.0;
  double beta = 2.0;
  double lambda_pi = 8.0;       ///< window for Poincare and cutoff-Sobolev ratios
  double lambda_whitney = 8.0;  ///< carried into the report for cover context
  std::uint64_t seed = 0x51a7eull;
  std::vector<Ball> balls;      ///< empty = default_ball_policy(g)
  ScaleFunction psi = ScaleFunction::power(2.0);
  bool psi_override = false;  ///< use the tabulated psi instead of r^beta
};

/// Certifies capacity, Poincare, and both cutoff-Sobolev forms on each ball;
/// per-ball jobs run under parallel_for with slot-deterministic seeds.
inline CertReport certify_graph(const WeightedGraph& g, const CertifyOptions& opt) {
  CertReport rep;
  rep.p = opt.p;
  rep.beta = opt.beta;
  rep.lambda_pi = opt.lambda_pi;
  rep.lambda_whitney = opt.lambda_whitney;
  const ScaleFunction psi =
      opt.psi_override ? opt.psi : ScaleFunction::power(opt.beta);
  const std::vector<Ball> balls = opt.balls.empty() ? default_ball_policy(g) : opt.balls;
  for (const Ball& b : balls)
    require(b.center >= 0 && b.center < g.n() && b.radius > 0.0,
            "ball centers are vertices and radii positive",
            "ball (" + std::to_string(b.center) + ", " + std::to_string(b.radius) + ")");
  rep.doubling = doubling_constant(g, balls);
  rep.balls.assign(balls.size(), {});
  parallel_for(static_cast<int>(balls.size()), [&](int i) {
    RatioOptions ropts;
    ropts.seed = opt.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(i + 1);
    CertBallRecord rec;
    rec.ball = balls[i];
    rec.cap = capacity_constant(g, balls[i], opt.p, psi);
    rec.pi = poincare_constant(g, balls[i], opt.p, opt.lambda_pi, psi, ropts);
    rec.cs = cs_constant(g, balls[i], rec.cap.cutoff, opt.p, opt.lambda_pi, ropts);
    rec.cs_classical =
        cs_classical_constant(g, balls[i], rec.cap.cutoff, opt.p, opt.lambda_pi, psi, ropts);
    rep.balls[i] = std::move(rec);
  });
  return rep;
}

// --- suite configuration ----------------------------------------------------

struct SuiteRunFlags {
  bool axioms = true;
  bool cover = false;
  bool partition = false;
  bool equivalence = false;
  int blend_trials = 0;
};

struct SuiteConfig {
  std::vector<FamilySpec> families;
  std::vector<double> p{2.0};
  std::vector<double> beta{2.0};
  double lambda_pi = 8.0;
  double lambda_whitney = 8.0;
  double eta = 0.5;
  double tol = 1e-9;
  int axiom_trials = 16;
  std::uint64_t seed = 0x51a7eull;
  std::vector<Ball> balls;  ///< empty = "auto" policy per graph
  SuiteRunFlags run;
};

/// Reads a JSON file; parse failures are reported with file:line:column.
inline nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "input file readable", path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(e.byte, text.size());
    for (std::size_t k = 0; k + 1 <= stop && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                e.what());
  }
}

namespace detail {

inline std::vector<double> number_list(const nlohmann::json& j, const char* key,
                                       std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else {
    require(v.is_array() && !v.empty(), "p/beta are numbers or nonempty arrays",
            std::string(key) + " = " + v.dump());
    for (const auto& x : v) {
      require(x.is_number(), "p/beta entries are numbers",
              std::string(key) + " entry " + x.dump());
      out.push_back(x.get<double>());
    }
  }
  return out;
}

inline double number_or(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  require(j.at(key).is_number(), "scalar options are numbers",
          std::string(key) + " = " + j.at(key).dump());
  return j.at(key).get<double>();
}

}  // namespace detail

/// Validates and converts a suite config.  Unknown keys and out-of-range
/// values are rejected with the offending key and value in the message.
inline SuiteConfig suite_config_from_json(const nlohmann::json& j) {
  require(j.is_object(), "config is a JSON object", j.dump().substr(0, 80));
  static const std::set<std::string> known{
      "families", "p",   "beta",  "lambda_pi", "lambda_whitney", "eta",
      "tolerance", "axiom_trials", "seed", "balls", "run"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    require(known.count(key) != 0, "config keys are known", "unknown key \"" + key + "\"");
  }
  SuiteConfig cfg;
  if (j.contains("families")) {
    require(j["families"].is_array(), "families is an array", j["families"].dump());
    for (const auto& f : j["families"]) cfg.families.push_back(family_spec_from_json(f));
  }
  cfg.p = detail::number_list(j, "p", cfg.p);
  for (double p : cfg.p)
    require(p > 1.0, "every p exceeds 1", "p = " + std::to_string(p));
  cfg.beta = detail::number_list(j, "beta", cfg.beta);
  for (double b : cfg.beta)
    require(b > 0.0, "every beta is positive", "beta = " + std::to_string(b));
  cfg.lambda_pi = detail::number_or(j, "lambda_pi", cfg.lambda_pi);
  require(cfg.lambda_pi >= 1.0, "lambda_pi >= 1", std::to_string(cfg.lambda_pi));
  cfg.lambda_whitney = detail::number_or(j, "lambda_whitney", cfg.lambda_whitney);
  require(cfg.lambda_whitney >= 8.0, "lambda_whitney >= 8",
          std::to_string(cfg.lambda_whitney));
  cfg.eta = detail::number_or(j, "eta", cfg.eta);
  require(cfg.eta > 0.0 && cfg.eta < 1.0, "eta in (0,1)", std::to_string(cfg.eta));
  cfg.tol = detail::number_or(j, "tolerance", cfg.tol);
  require(cfg.tol > 0.0, "tolerance positive", std::to_string(cfg.tol));
  cfg.axiom_trials = static_cast<int>(detail::number_or(j, "axiom_trials", 16.0));
  require(cfg.axiom_trials >= 1, "axiom_trials >= 1", std::to_string(cfg.axiom_trials));
  if (j.contains("seed")) {
    require(j["seed"].is_number_unsigned() || j["seed"].is_number_integer(),
            "seed is an integer", j["seed"].dump());
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("balls") && !(j["balls"].is_string() && j["balls"] == "auto")) {
    require(j["balls"].is_array(), "balls is \"auto\" or an array of [center, radius]",
            j["balls"].dump());
    for (const auto& b : j["balls"]) {
      require(b.is_array() && b.size() == 2 && b[0].is_number_integer() &&
                  b[1].is_number() && b[1].get<double>() > 0.0,
              "each ball is [center, radius > 0]", b.dump());
      cfg.balls.push_back({b[0].get<int>(), b[1].get<double>()});
    }
  }
  if (j.contains("run")) {
    const auto& r = j["run"];
    require(r.is_object(), "run is an object", r.dump());
    static const std::set<std::string> rknown{"axioms", "cover", "partition",
                                             "equivalence", "blend_trials"};
    for (const auto& [key, value] : r.items()) {
      (void)value;
      require(rknown.count(key) != 0, "run keys are known",
              "unknown key \"run." + key + "\"");
    }
    auto flag = [&](const char* key, bool fallback) {
      if (!r.contains(key)) return fallback;
      require(r.at(key).is_boolean(), "run flags are booleans",
              std::string(key) + " = " + r.at(key).dump());
      return r.at(key).get<bool>();
    };
    cfg.run.axioms = flag("axioms", cfg.run.axioms);
    cfg.run.cover = flag("cover", cfg.run.cover);
    cfg.run.partition = flag("partition", cfg.run.partition);
    cfg.run.equivalence = flag("equivalence", cfg.run.equivalence);
    cfg.run.blend_trials =
        static_cast<int>(detail::number_or(r, "blend_trials", 0.0));
    require(cfg.run.blend_trials >= 0, "blend_trials >= 0",
            std::to_string(cfg.run.blend_trials));
  }
  return cfg;
}

// --- suite execution --------------------------------------------------------

struct SuiteBlendSummary {
  double p = 0.0;
  int trials = 0;
  int degenerate = 0;  ///< trials with no annulus or no exterior to blend over
  double max_c_wb = 0.0;
  bool finite = true;
  bool boundary_exact = true;  ///< h == f on closure(B0), h == g outside, bitwise
};

struct SuiteUnit {
  FamilySpec spec;
  std::vector<std::string> warnings;
  std::vector<Ball> balls;
  std::vector<AxiomsReport> axioms;  ///< aligned with config p list
  bool cover_run = false;
  WhitneyCover cover;
  WhitneyCertificate cover_cert;
  NeighborGeometryReport cover_neighbors;
  std::vector<PartitionCertificate> partition_certs;  ///< aligned with p
  std::vector<PartitionAudit> partition_audits;
  std::vector<SuiteBlendSummary> blends;
  std::vector<EquivalenceReport> equivalences;  ///< aligned with p
  std::vector<CertReport> certs;  ///< p-major, then beta
  bool pass = true;
  std::vector<std::string> failures;  ///< human-readable hard failures
};

struct SuiteResult {
  std::vector<SuiteUnit> units;
  bool pass = true;
};

namespace detail {

inline void suite_fail(SuiteUnit& unit, const std::string& what) {
  unit.pass = false;
  unit.failures.push_back(what);
}

// Annulus 2B \ B of the widest ball; the suite's default cover domain.
inline std::vector<int> annulus_of(const WeightedGraph& g, const Ball& b) {
  const auto inner = g.mask(g.ball_members(b));
  std::vector<int> out;
  for (int x : g.ball_members({b.center, 2.0 * b.radius}))
    if (!inner[x]) out.push_back(x);
  return out;
}

inline bool cert_finite(const RatioCertificate& c) {
  return !c.infinite && std::isfinite(c.value);
}

}  // namespace detail

/// Executes the configured pipelines on one generated fixture.
inline SuiteUnit run_suite_unit(const SuiteConfig& cfg, const Fixture& fixture) {
  SuiteUnit unit;
  unit.spec = fixture.spec;
  unit.warnings = fixture.warnings;
  const WeightedGraph& g = fixture.graph;
  unit.balls = cfg.balls.empty() ? default_ball_policy(g) : cfg.balls;
  for (const Ball& b : unit.balls)
    if (b.center < 0 || b.center >= g.n() || !(b.radius > 0.0)) {
      detail::suite_fail(unit, "ball (" + std::to_string(b.center) + ", " +
                                   std::to_string(b.radius) + ") invalid on " +
                                   std::to_string(g.n()) + " vertices");
      return unit;
    }

  if (cfg.run.axioms) {
    for (double p : cfg.p) {
      unit.axioms.push_back(axioms_report(g, p, cfg.axiom_trials, cfg.seed));
      if (!unit.axioms.back().pass())
        detail::suite_fail(unit, "axioms failed at p = " + std::to_string(p));
    }
  }

  for (std::size_t ip = 0; ip < cfg.p.size(); ++ip) {
    for (double beta : cfg.beta) {
      CertifyOptions copt;
      copt.p = cfg.p[ip];
      copt.beta = beta;
      copt.lambda_pi = cfg.lambda_pi;
      copt.lambda_whitney = cfg.lambda_whitney;
      copt.seed = cfg.seed + 0x100001ull * static_cast<std::uint64_t>(ip + 1);
      copt.balls = unit.balls;
      CertReport rep = certify_graph(g, copt);
      rep.family = unit.spec.family;
      rep.level = unit.spec.level;
      for (const CertBallRecord& rec : rep.balls)
        if (!detail::cert_finite(rec.pi) || !detail::cert_finite(rec.cs) ||
            !detail::cert_finite(rec.cs_classical) || !std::isfinite(rec.cap.value))
          detail::suite_fail(unit,
                             "non-finite constant on ball center " +
                                 std::to_string(rec.ball.center) + " at p = " +
                                 std::to_string(copt.p));
      unit.certs.push_back(std::move(rep));
    }
  }

  const Ball widest = *std::max_element(
      unit.balls.begin(), unit.balls.end(),
      [](const Ball& a, const Ball& b) { return a.radius < b.radius; });

  if (cfg.run.cover) {
    unit.cover_run = true;
    unit.cover = whitney_cover(g, detail::annulus_of(g, widest), cfg.lambda_whitney);
    unit.cover_cert = whitney_certificate(g, unit.cover);
    unit.cover_neighbors = neighbor_geometry_check(g, unit.cover);
    if (!unit.cover_cert.pass()) detail::suite_fail(unit, "cover certificate failed");
    if (!unit.cover_neighbors.pass)
      detail::suite_fail(unit, "cover neighbor geometry failed");
  }

  if (cfg.run.partition) {
    std::vector<Ball> pballs;
    if (unit.cover_run)
      for (const WhitneyBall& wb : unit.cover.balls) pballs.push_back(wb.ball);
    if (pballs.empty()) pballs = unit.balls;
    const ScaleFunction scale = ScaleFunction::power(cfg.beta.front());
    for (double p : cfg.p) {
      SobolevPartition part = sobolev_partition(g, pballs, p);
      PartitionAudit audit = partition_energy_audit(g, part, scale);
      if (!part.cert.pass())
        detail::suite_fail(unit, "partition certificate failed at p = " + std::to_string(p));
      if (!audit.pass)
        detail::suite_fail(unit, "partition energy audit failed at p = " + std::to_string(p));
      unit.partition_certs.push_back(part.cert);
      unit.partition_audits.push_back(std::move(audit));
    }
  }

  if (cfg.run.blend_trials > 0) {
    const ScaleFunction scale = ScaleFunction::power(cfg.beta.front());
    const double diam = g.diameter();
    for (std::size_t ip = 0; ip < cfg.p.size(); ++ip) {
      SuiteBlendSummary sum;
      sum.p = cfg.p[ip];
      Rng rng(cfg.seed ^ (0xb1e4d00ull + ip));
      for (int t = 0; t < cfg.run.blend_trials; ++t) {
        VertexFunction f = detail::random_function(g, rng);
        VertexFunction h_out = detail::random_function(g, rng);
        std::uniform_int_distribution<int> pick(0, g.n() - 1);
        std::uniform_real_distribution<double> rad(diam / 16.0, diam / 4.0);
        const Ball b0{pick(rng), rad(rng)};
        BlendResult blend =
            whitney_blend(g, f, h_out, b0, cfg.eta, cfg.p[ip], cfg.lambda_whitney);
        ++sum.trials;
        if (blend.degenerate || blend.annulus_empty) {
          ++sum.degenerate;
        } else {
          BlendEnergyReport brep = blend_energy_report(g, blend, scale);
          sum.finite = sum.finite && brep.finite;
          sum.max_c_wb = std::max(sum.max_c_wb, blend.c_wb);
        }
        for (int x : g.ball_closure(b0))
          if (blend.h[x] != f[x]) sum.boundary_exact = false;
        const auto big = g.mask(g.ball_members({b0.center, (1.0 + cfg.eta) * b0.radius}));
        const auto closure = g.mask(g.ball_closure(b0));
        for (int x = 0; x < g.n(); ++x)
          if (!big[x] && !closure[x] && blend.h[x] != h_out[x]) sum.boundary_exact = false;
      }
      if (!sum.finite)
        detail::suite_fail(unit, "blend ratio not finite at p = " + std::to_string(sum.p));
      if (!sum.boundary_exact)
        detail::suite_fail(unit, "blend boundary agreement failed at p = " +
                                     std::to_string(sum.p));
      unit.blends.push_back(sum);
    }
  }

  if (cfg.run.equivalence) {
    for (double p : cfg.p) {
      RatioOptions ropts;
      ropts.seed = cfg.seed + 0xe91ull;
      EquivalenceReport rep = cs_equivalence_check(
          g, widest, p, 2.0, ScaleFunction::power(cfg.beta.front()), {}, ropts, cfg.tol);
      if (p == 2.0 && !rep.pass)
        detail::suite_fail(unit, "equivalence inequalities failed at p = 2");
      unit.equivalences.push_back(std::move(rep));
    }
  }

  return unit;
}

/// Runs every configured family.  Generation or pipeline errors mark the unit
/// failed (with the message recorded) instead of aborting the suite.
inline SuiteResult run_suite(const SuiteConfig& cfg) {
  SuiteResult result;
  for (const FamilySpec& spec : cfg.families) {
    SuiteUnit unit;
    try {
      const Fixture fixture = generate_fixture(spec);
      unit = run_suite_unit(cfg, fixture);
    } catch (const std::exception& e) {
      unit.spec = spec;
      detail::suite_fail(unit, e.what());
    }
    result.pass = result.pass && unit.pass;
    result.units.push_back(std::move(unit));
  }
  return result;
}

// --- report emission --------------------------------------------------------

inline nlohmann::json axioms_to_json(const AxiomsReport& r) {
  auto check = [](const AxiomCheck& c) {
    return nlohmann::json{{"worst_slack", c.worst_slack}, {"pass", c.pass},
                          {"witness", c.witness}};
  };
  return nlohmann::json{{"homogeneity", check(r.homogeneity)},
                        {"triangle", check(r.triangle)},
                        {"contraction", check(r.contraction)},
                        {"locality", check(r.locality)},
                        {"continuity", check(r.continuity)},
                        {"pass", r.pass()}};
}

inline nlohmann::json equivalence_to_json(const EquivalenceReport& r) {
  return nlohmann::json{{"p", r.p},
                        {"lambda", r.lambda},
                        {"c_cap", r.cap.value},
                        {"c_cs", r.cs.value},
                        {"c_cs_wide", r.cs_wide.value},
                        {"c_classical", r.classical.value},
                        {"c_pi_double", r.pi_double.value},
                        {"implied_cs", r.implied_cs},
                        {"cs_slack", r.cs_slack},
                        {"implied_classical", r.implied_classical},
                        {"classical_slack", r.classical_slack},
                        {"pass", r.pass}};
}

inline nlohmann::json suite_unit_to_json(const SuiteUnit& u, const SuiteConfig& cfg) {
  nlohmann::json j;
  j["schema"] = "pdirichlet-report/1";
  j["kind"] = "suite-unit";
  j["spec"] = family_spec_to_json(u.spec);
  j["warnings"] = u.warnings;
  j["pass"] = u.pass;
  j["failures"] = u.failures;
  nlohmann::json balls = nlohmann::json::array();
  for (const Ball& b : u.balls)
    balls.push_back({{"center", b.center}, {"radius", b.radius}});
  j["balls"] = balls;
  if (!u.axioms.empty()) {
    nlohmann::json ax = nlohmann::json::array();
    for (std::size_t i = 0; i < u.axioms.size(); ++i) {
      nlohmann::json one = axioms_to_json(u.axioms[i]);
      one["p"] = cfg.p[i];
      ax.push_back(std::move(one));
    }
    j["axioms"] = ax;
  }
  if (u.cover_run) {
    j["cover"] = {{"lambda", u.cover.lambda},
                  {"omega_size", u.cover.omega.size()},
                  {"balls", u.cover.balls.size()},
                  {"certificate",
                   {{"distance_band", u.cover_cert.distance_band},
                    {"covers", u.cover_cert.covers},
                    {"scale_gap", u.cover_cert.scale_gap},
                    {"overlap", u.cover_cert.overlap},
                    {"pass", u.cover_cert.pass()}}},
                  {"neighbors",
                   {{"checked_pairs", u.cover_neighbors.checked_pairs},
                    {"pass", u.cover_neighbors.pass}}}};
  }
  if (!u.partition_audits.empty()) {
    nlohmann::json parts = nlohmann::json::array();
    for (std::size_t i = 0; i < u.partition_audits.size(); ++i) {
      const PartitionAudit& a = u.partition_audits[i];
      const PartitionCertificate& c = u.partition_certs[i];
      parts.push_back({{"p", cfg.p[i]},
                       {"c_b", a.c_b},
                       {"c_cap", a.c_cap},
                       {"j_max", a.j_max},
                       {"audit_pass", a.pass},
                       {"unity_defect", c.unity_defect},
                       {"certificate_pass", c.pass()}});
    }
    j["partitions"] = parts;
  }
  if (!u.blends.empty()) {
    nlohmann::json blends = nlohmann::json::array();
    for (const SuiteBlendSummary& b : u.blends)
      blends.push_back({{"p", b.p},
                        {"trials", b.trials},
                        {"degenerate", b.degenerate},
                        {"max_c_wb", b.max_c_wb},
                        {"finite", b.finite},
                        {"boundary_exact", b.boundary_exact}});
    j["blends"] = blends;
  }
  if (!u.equivalences.empty()) {
    nlohmann::json eq = nlohmann::json::array();
    for (const EquivalenceReport& r : u.equivalences) eq.push_back(equivalence_to_json(r));
    j["equivalence"] = eq;
  }
  nlohmann::json certs = nlohmann::json::array();
  for (const CertReport& rep : u.certs) certs.push_back(cert_report_to_json(rep));
  j["certs"] = certs;
  return j;
}

/// CSV summary: one row per (family, level, p, beta, ball).
inline std::string suite_csv(const SuiteResult& result) {
  std::ostringstream out;
  out << "family,level,p,beta,center,radius,c_cap,c_pi,c_pi_method,c_cs,"
         "c_cs_classical,doubling,unit_pass\n";
  out << std::setprecision(12);
  for (const SuiteUnit& u : result.units)
    for (const CertReport& rep : u.certs)
      for (const CertBallRecord& rec : rep.balls)
        out << u.spec.family << ',' << u.spec.level << ',' << rep.p << ',' << rep.beta
            << ',' << rec.ball.center << ',' << rec.ball.radius << ',' << rec.cap.value
            << ',' << rec.pi.value << ',' << cert_method_name(rec.pi.method) << ','
            << rec.cs.value << ',' << rec.cs_classical.value << ','
            << rep.doubling.constant << ',' << (u.pass ? 1 : 0) << '\n';
  return out.str();
}

/// Loads a config file, runs the suite, writes one JSON report per
/// (family, level) plus summary.csv into out_dir.  Returns the process exit
/// code: 0 iff every hard assertion passed.
inline int run_suite_files(const std::string& config_path, const std::string& out_dir) {
  const SuiteConfig cfg = suite_config_from_json(parse_json_file(config_path));
  const SuiteResult result = run_suite(cfg);
  std::filesystem::create_directories(out_dir);
  std::set<std::string> used;
  for (const SuiteUnit& u : result.units) {
    std::string stem = u.spec.family;
    if (u.spec.family == "lattice_box") stem += "_d" + std::to_string(u.spec.dim);
    stem += "_" + std::to_string(u.spec.level);
    std::string name = stem;
    for (int k = 2; used.count(name); ++k) name = stem + "_" + std::to_string(k);
    used.insert(name);
    std::ofstream file(out_dir + "/" + name + ".json");
    require(file.good(), "report file writable", out_dir + "/" + name + ".json");
    file << suite_unit_to_json(u, cfg).dump(2) << '\n';
  }
  std::ofstream csv(out_dir + "/summary.csv");
  require(csv.good(), "summary file writable", out_dir + "/summary.csv");
  csv << suite_csv(result);
  return result.pass ? 0 : 1;
}

}  // namespace pdlab
