// pdlab command-line tool.
//
// Subcommands:
//   gen      generate a fixture graph and print its JSON
//   axioms   run the energy-measure axiom battery on a graph
//   cover    build a Whitney cover of a region and certify it
//   blend    blend two functions across an annulus and report the energy
//   certify  run the capacity / Poincare / cutoff-stability battery
//   report   run a full suite config and write reports to a directory
//
// Exit codes: 0 = pass, 1 = a hard assertion failed, 2 = validation error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdlab/pdlab.hpp"

namespace {

using pdlab::Ball;
using pdlab::ScaleFunction;
using pdlab::VertexFunction;
using pdlab::WeightedGraph;

WeightedGraph load_graph(const std::string& path) {
  return pdlab::graph_from_json(pdlab::parse_json_file(path));
}

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out);
  if (!os) throw pdlab::Error("cannot open output file " + out);
  os << j.dump(2) << "\n";
}

Ball parse_ball(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw pdlab::Error("ball must be CENTER,RADIUS, got \"" + text + "\"");
  Ball b;
  try {
    b.center = std::stoi(text.substr(0, comma));
    b.radius = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw pdlab::Error("ball must be CENTER,RADIUS, got \"" + text + "\"");
  }
  return b;
}

VertexFunction load_function(const std::string& path, int n) {
  const nlohmann::json j = pdlab::parse_json_file(path);
  if (!j.is_array())
    throw pdlab::Error(path + ": a vertex function is a JSON array of numbers");
  VertexFunction f;
  for (const auto& v : j) {
    if (!v.is_number())
      throw pdlab::Error(path + ": a vertex function is a JSON array of numbers");
    f.push_back(v.get<double>());
  }
  if (static_cast<int>(f.size()) != n)
    throw pdlab::Error(path + ": function has " + std::to_string(f.size()) +
                                   " values but the graph has " + std::to_string(n) +
                                   " vertices");
  return f;
}

// Scale file: {"radii": [...], "values": [...], "beta_minus": 2, "beta_plus": 2,
// "c_psi": 1}.  Absent file means the power law r^beta.
ScaleFunction load_scale(const std::string& psi_path, double beta) {
  if (psi_path.empty()) return ScaleFunction::power(beta);
  const nlohmann::json j = pdlab::parse_json_file(psi_path);
  if (!j.is_object() || !j.contains("radii") || !j.contains("values"))
    throw pdlab::Error(psi_path + ": scale file needs \"radii\" and \"values\"");
  auto numbers = [&](const char* key) {
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
      if (!v.is_number())
        throw pdlab::Error(psi_path + ": \"" + key + "\" holds numbers");
      out.push_back(v.get<double>());
    }
    return out;
  };
  const double beta_minus = j.value("beta_minus", 2.0);
  const double beta_plus = j.value("beta_plus", 2.0);
  const double c_psi = j.value("c_psi", 1.0);
  return ScaleFunction::table(numbers("radii"), numbers("values"), beta_minus, beta_plus,
                              c_psi);
}

std::vector<Ball> load_balls(const WeightedGraph& g, const std::string& spec) {
  if (spec.empty() || spec == "auto") return pdlab::default_ball_policy(g);
  const nlohmann::json j = pdlab::parse_json_file(spec);
  if (!j.is_array())
    throw pdlab::Error(spec + ": balls file is a JSON array of [center, radius]");
  std::vector<Ball> balls;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number())
      throw pdlab::Error(spec +
                                     ": balls file is a JSON array of [center, radius]");
    balls.push_back({v[0].get<int>(), v[1].get<double>()});
  }
  return balls;
}

std::vector<int> load_vertex_set(const std::string& path, int n) {
  const nlohmann::json j = pdlab::parse_json_file(path);
  if (!j.is_array())
    throw pdlab::Error(path + ": a region is a JSON array of vertex ids");
  std::vector<int> omega;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw pdlab::Error(path + ": a region is a JSON array of vertex ids");
    const int x = v.get<int>();
    if (x < 0 || x >= n)
      throw pdlab::Error(path + ": vertex " + std::to_string(x) +
                                     " out of range");
    omega.push_back(x);
  }
  return omega;
}

// --- subcommand bodies -------------------------------------------------

struct GenArgs {
  std::string family;
  int level = 1, dim = 2, neck = 4;
  double conductance = 0.0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  pdlab::FamilySpec spec;
  spec.family = a.family;
  spec.level = a.level;
  spec.dim = a.dim;
  spec.neck = a.neck;
  spec.conductance = a.conductance;
  const pdlab::Fixture fx = pdlab::generate_fixture(spec);
  for (const std::string& w : fx.warnings) std::cerr << "pdlab: warning: " << w << "\n";
  emit(pdlab::graph_to_json(fx.graph), a.out);
  return 0;
}

struct AxiomArgs {
  std::string graph;
  double p = 2.0;
  int trials = 16;
  std::uint64_t seed = 0x51a7eull;
  std::string out;
};

int run_axioms(const AxiomArgs& a) {
  const WeightedGraph g = load_graph(a.graph);
  const pdlab::AxiomsReport rep = pdlab::axioms_report(g, a.p, a.trials, a.seed);
  nlohmann::json j = pdlab::axioms_to_json(rep);
  j["p"] = a.p;
  j["trials"] = a.trials;
  emit(j, a.out);
  return rep.pass() ? 0 : 1;
}

struct CoverArgs {
  std::string graph, ball, omega, out;
  double lambda = 8.0;
};

int run_cover(const CoverArgs& a) {
  const WeightedGraph g = load_graph(a.graph);
  std::vector<int> omega;
  if (!a.omega.empty()) {
    omega = load_vertex_set(a.omega, g.n());
  } else if (!a.ball.empty()) {
    omega = pdlab::detail::annulus_of(g, parse_ball(a.ball));
  } else {
    throw pdlab::Error("cover needs --ball or --omega");
  }
  const pdlab::WhitneyCover cover = pdlab::whitney_cover(g, omega, a.lambda);
  const pdlab::WhitneyCertificate cert = pdlab::whitney_certificate(g, cover);
  const pdlab::NeighborGeometryReport nbr = pdlab::neighbor_geometry_check(g, cover);
  nlohmann::json j = pdlab::cover_to_json(cover);
  j["certificate"] = {{"distance_band", cert.distance_band},
                     {"covers", cert.covers},
                     {"scale_gap", cert.scale_gap},
                     {"overlap", cert.overlap},
                     {"pass", cert.pass()}};
  j["neighbors"] = {{"checked_pairs", nbr.checked_pairs}, {"pass", nbr.pass}};
  emit(j, a.out);
  return (cert.pass() && nbr.pass) ? 0 : 1;
}

struct BlendArgs {
  std::string graph, ball, f_path, g_path, psi, out;
  double eta = 0.5, p = 2.0, lambda = 8.0, beta = 2.0;
};

int run_blend(const BlendArgs& a) {
  const WeightedGraph g = load_graph(a.graph);
  const VertexFunction f = load_function(a.f_path, g.n());
  const VertexFunction h_out = load_function(a.g_path, g.n());
  pdlab::BlendResult blend =
      pdlab::whitney_blend(g, f, h_out, parse_ball(a.ball), a.eta, a.p, a.lambda);
  const pdlab::BlendEnergyReport rep =
      pdlab::blend_energy_report(g, blend, load_scale(a.psi, a.beta));
  emit(pdlab::blend_to_json(blend, rep), a.out);
  return (blend.degenerate || std::isfinite(blend.c_wb)) ? 0 : 1;
}

struct CertifyArgs {
  std::string graph, balls, psi, out;
  double p = 2.0, beta = 2.0, lambda_pi = 8.0, lambda_whitney = 8.0;
  std::uint64_t seed = 0x51a7eull;
};

int run_certify(const CertifyArgs& a) {
  const WeightedGraph g = load_graph(a.graph);
  pdlab::CertifyOptions opt;
  opt.p = a.p;
  opt.beta = a.beta;
  opt.lambda_pi = a.lambda_pi;
  opt.lambda_whitney = a.lambda_whitney;
  opt.seed = a.seed;
  opt.balls = load_balls(g, a.balls);
  if (!a.psi.empty()) {
    opt.psi = load_scale(a.psi, a.beta);
    opt.psi_override = true;
  }
  const pdlab::CertReport rep = pdlab::certify_graph(g, opt);
  emit(pdlab::cert_report_to_json(rep), a.out);
  for (const pdlab::CertBallRecord& rec : rep.balls)
    if (rec.pi.infinite || rec.cs.infinite || rec.cs_classical.infinite) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for p-Dirichlet structures on weighted graphs"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a fixture graph");
  cmd_gen->add_option("--family", gen.family,
                      "path | cycle | lattice_box | gasket | carpet | dumbbell")
      ->required();
  cmd_gen->add_option("--level", gen.level, "refinement level / side length");
  cmd_gen->add_option("--dim", gen.dim, "lattice dimension (lattice_box only)");
  cmd_gen->add_option("--neck", gen.neck, "neck length (dumbbell only)");
  cmd_gen->add_option("--conductance", gen.conductance, "override edge conductance");
  cmd_gen->add_option("--out", gen.out, "output file (default stdout)");

  AxiomArgs ax;
  CLI::App* cmd_ax = app.add_subcommand("axioms", "check the energy-measure axioms");
  cmd_ax->add_option("--graph", ax.graph, "graph JSON file")->required();
  cmd_ax->add_option("--p", ax.p, "exponent p > 1");
  cmd_ax->add_option("--trials", ax.trials, "random trials per axiom");
  cmd_ax->add_option("--seed", ax.seed, "rng seed");
  cmd_ax->add_option("--out", ax.out, "output file (default stdout)");

  CoverArgs cov;
  CLI::App* cmd_cov = app.add_subcommand("cover", "Whitney cover of a region");
  cmd_cov->add_option("--graph", cov.graph, "graph JSON file")->required();
  cmd_cov->add_option("--ball", cov.ball, "CENTER,RADIUS; the region is the annulus 2B \\ B");
  cmd_cov->add_option("--omega", cov.omega, "region file (JSON array of vertex ids)");
  cmd_cov->add_option("--lambda", cov.lambda, "inflation parameter Lambda >= 8");
  cmd_cov->add_option("--out", cov.out, "output file (default stdout)");

  BlendArgs bl;
  CLI::App* cmd_bl = app.add_subcommand("blend", "blend two functions across an annulus");
  cmd_bl->add_option("--graph", bl.graph, "graph JSON file")->required();
  cmd_bl->add_option("--ball", bl.ball, "CENTER,RADIUS of the inner ball")->required();
  cmd_bl->add_option("--f", bl.f_path, "inner function file")->required();
  cmd_bl->add_option("--g", bl.g_path, "outer function file")->required();
  cmd_bl->add_option("--eta", bl.eta, "annulus width eta in (0,1)");
  cmd_bl->add_option("--p", bl.p, "exponent p > 1");
  cmd_bl->add_option("--lambda", bl.lambda, "Whitney inflation Lambda >= 8");
  cmd_bl->add_option("--beta", bl.beta, "power-scale exponent for the energy report");
  cmd_bl->add_option("--psi", bl.psi, "tabulated scale file (overrides --beta)");
  cmd_bl->add_option("--out", bl.out, "output file (default stdout)");

  CertifyArgs ce;
  CLI::App* cmd_ce = app.add_subcommand("certify", "capacity / Poincare / cutoff battery");
  cmd_ce->add_option("--graph", ce.graph, "graph JSON file")->required();
  cmd_ce->add_option("--p", ce.p, "exponent p > 1");
  cmd_ce->add_option("--beta", ce.beta, "power-scale exponent");
  cmd_ce->add_option("--lambda-pi", ce.lambda_pi, "Poincare window Lambda >= 1");
  cmd_ce->add_option("--lambda-whitney", ce.lambda_whitney, "Whitney inflation Lambda >= 8");
  cmd_ce->add_option("--balls", ce.balls, "\"auto\" or a JSON file of [center, radius]");
  cmd_ce->add_option("--seed", ce.seed, "rng seed");
  cmd_ce->add_option("--psi", ce.psi, "tabulated scale file (overrides --beta)");
  cmd_ce->add_option("--out", ce.out, "output file (default stdout)");

  std::string rep_config, rep_dir = "reports";
  CLI::App* cmd_rep = app.add_subcommand("report", "run a suite config, write reports");
  cmd_rep->add_option("--config", rep_config, "suite config JSON file")->required();
  cmd_rep->add_option("--out-dir", rep_dir, "report directory (default ./reports)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_gen)) return run_gen(gen);
    if (app.got_subcommand(cmd_ax)) return run_axioms(ax);
    if (app.got_subcommand(cmd_cov)) return run_cover(cov);
    if (app.got_subcommand(cmd_bl)) return run_blend(bl);
    if (app.got_subcommand(cmd_ce)) return run_certify(ce);
    if (app.got_subcommand(cmd_rep)) return pdlab::run_suite_files(rep_config, rep_dir);
  } catch (const pdlab::Error& e) {
    std::cerr << "pdlab: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pdlab: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
