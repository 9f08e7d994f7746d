#pragma once
// Deterministic generators for the laboratory's graph families: flat
// combinatorial fixtures (path, cycle, lattice boxes, dumbbells) and
// self-similar pre-fractal approximations (gasket, carpet) whose edge
// lengths shrink with the level so diameters stay level-independent.
//
// Measures are uniform per vertex and normalized to total 1.  Conductances
// follow the family's standard resistance scaling; the factor is exposed so
// non-standard renormalizations can be probed (see FamilySpec::conductance).

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdlab/graph.hpp"

namespace pdlab {

struct FamilySpec {
  std::string family;  ///< path | cycle | lattice_box | gasket | carpet | dumbbell
  int level = 1;       ///< edges (path/cycle), side (lattice_box, dumbbell blocks),
                       ///< refinement level (gasket/carpet)
  int dim = 2;         ///< lattice_box only: box dimension, 1..3
  int neck = 4;        ///< dumbbell only: neck edge count
  /// Conductance factor; 0 selects the family standard.  Flat families use it
  /// as the edge conductance, gasket/carpet raise it to the level (the
  /// standard gasket factor is 5/3, the p = 2 resistance renormalization).
  double conductance = 0.0;
};

/// A generated graph plus its construction coordinates.  Positions are exact
/// where refinement identities need them: gasket vertices carry sheared
/// dyadic coordinates ((x + y/2)/2^level, y/2^level), carpet vertices carry
/// lattice coordinates (i/3^level, j/3^level); a level-l position is then
/// bitwise equal to its image at level l+1.  Flat families get a drawing
/// layout with no exactness contract.
struct Fixture {
  FamilySpec spec;
  WeightedGraph graph;
  std::vector<std::array<double, 2>> positions;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<double> uniform_mu(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

struct GasketBuilder {
  long unit = 1;  // 2^level
  double w = 1.0, len = 1.0;
  std::map<std::pair<long, long>, int> ids;
  std::vector<std::array<double, 2>> pos;
  std::vector<Edge> edges;

  int vertex(long x, long y) {
    auto [it, fresh] = ids.try_emplace({x, y}, static_cast<int>(pos.size()));
    if (fresh)
      pos.push_back({(static_cast<double>(x) + 0.5 * static_cast<double>(y)) /
                         static_cast<double>(unit),
                     static_cast<double>(y) / static_cast<double>(unit)});
    return it->second;
  }

  // Triangle corners in scaled integer coordinates; each depth-0 triangle
  // owns its three edges (sibling triangles share only vertices).
  void cell(long ax, long ay, long bx, long by, long cx, long cy, int depth) {
    if (depth == 0) {
      int a = vertex(ax, ay), b = vertex(bx, by), c = vertex(cx, cy);
      edges.push_back({a, b, w, len});
      edges.push_back({b, c, w, len});
      edges.push_back({c, a, w, len});
      return;
    }
    const long abx = (ax + bx) / 2, aby = (ay + by) / 2;
    const long bcx = (bx + cx) / 2, bcy = (by + cy) / 2;
    const long acx = (ax + cx) / 2, acy = (ay + cy) / 2;
    cell(ax, ay, abx, aby, acx, acy, depth - 1);
    cell(abx, aby, bx, by, bcx, bcy, depth - 1);
    cell(acx, acy, bcx, bcy, cx, cy, depth - 1);
  }
};

// Sierpinski-carpet cell test: a cell survives when no base-3 digit pair of
// its coordinates is (1, 1).
inline bool carpet_cell(long i, long j, int level) {
  for (int k = 0; k < level; ++k) {
    if (i % 3 == 1 && j % 3 == 1) return false;
    i /= 3;
    j /= 3;
  }
  return true;
}

}  // namespace detail

/// Deterministic family generator.  Validates budgets (gasket level <= 7,
/// carpet level <= 4) and parameter ranges; throws PreconditionError with the
/// offending value otherwise.
inline Fixture generate_fixture(const FamilySpec& spec) {
  Fixture out;
  out.spec = spec;
  require(spec.conductance >= 0.0, "conductance >= 0 (0 = family standard)",
          "conductance = " + std::to_string(spec.conductance));
  const double flat_w = spec.conductance == 0.0 ? 1.0 : spec.conductance;

  if (spec.family == "path" || spec.family == "cycle") {
    const bool cyc = spec.family == "cycle";
    const int n = spec.level;
    require(n >= (cyc ? 3 : 1) && n <= 200000, cyc ? "3 <= cycle length <= 2e5"
                                                   : "1 <= path edges <= 2e5",
            "level = " + std::to_string(n));
    const int verts = cyc ? n : n + 1;
    std::vector<Edge> es;
    for (int i = 0; i + 1 < verts; ++i) es.push_back({i, i + 1, flat_w, 1.0});
    if (cyc) es.push_back({n - 1, 0, flat_w, 1.0});
    for (int i = 0; i < verts; ++i) {
      if (cyc) {
        const double th = 2.0 * 3.14159265358979323846 * i / n;
        out.positions.push_back({std::cos(th), std::sin(th)});
      } else {
        out.positions.push_back({static_cast<double>(i), 0.0});
      }
    }
    out.graph = WeightedGraph::build(detail::uniform_mu(verts), std::move(es));
    return out;
  }

  if (spec.family == "lattice_box" || spec.family == "dumbbell") {
    const int m = spec.level;
    const int dim = spec.family == "dumbbell" ? 2 : spec.dim;
    require(dim >= 1 && dim <= 3, "lattice dimension in {1,2,3}",
            "dim = " + std::to_string(dim));
    require(m >= 2, "side length >= 2", "level = " + std::to_string(m));
    require(std::pow(static_cast<double>(m), dim) <= 200000.0,
            "lattice vertex budget m^dim <= 2e5", "m = " + std::to_string(m));
    const int block = static_cast<int>(std::llround(std::pow(m, dim)));
    const int zmax = dim >= 3 ? m : 1, ymax = dim >= 2 ? m : 1;
    auto id = [&](int x, int y, int z) { return x + m * (y + (dim >= 3 ? m * z : 0)); };
    std::vector<Edge> es;
    auto add_block = [&](int base, double xshift) {
      for (int z = 0; z < zmax; ++z)
        for (int y = 0; y < ymax; ++y)
          for (int x = 0; x < m; ++x) {
            out.positions.push_back({xshift + x + 0.25 * z, y + 0.25 * z});
            if (x + 1 < m) es.push_back({base + id(x, y, z), base + id(x + 1, y, z), flat_w, 1.0});
            if (y + 1 < ymax) es.push_back({base + id(x, y, z), base + id(x, y + 1, z), flat_w, 1.0});
            if (z + 1 < zmax) es.push_back({base + id(x, y, z), base + id(x, y, z + 1), flat_w, 1.0});
          }
    };
    add_block(0, 0.0);
    int verts = block;
    if (spec.family == "dumbbell") {
      require(spec.neck >= 1 && spec.neck <= 10000, "1 <= neck edges <= 1e4",
              "neck = " + std::to_string(spec.neck));
      const int r0 = (m - 1) / 2;
      const int port_a = id(m - 1, r0, 0);
      add_block(block, static_cast<double>(m - 1 + spec.neck));
      const int port_b = block + id(0, r0, 0);
      int prev = port_a;
      for (int k = 0; k + 1 < spec.neck; ++k) {
        const int v = 2 * block + k;
        out.positions.push_back({static_cast<double>(m + k), static_cast<double>(r0)});
        es.push_back({prev, v, flat_w, 1.0});
        prev = v;
      }
      es.push_back({prev, port_b, flat_w, 1.0});
      verts = 2 * block + spec.neck - 1;
    }
    out.graph = WeightedGraph::build(detail::uniform_mu(verts), std::move(es));
    return out;
  }

  if (spec.family == "gasket") {
    require(spec.level >= 0 && spec.level <= 7, "gasket level in [0, 7]",
            "level = " + std::to_string(spec.level));
    detail::GasketBuilder b;
    b.unit = 1L << spec.level;
    b.len = std::pow(2.0, -spec.level);
    const double factor = spec.conductance == 0.0 ? 5.0 / 3.0 : spec.conductance;
    b.w = std::pow(factor, spec.level);
    b.cell(0, 0, b.unit, 0, 0, b.unit, spec.level);
    out.positions = std::move(b.pos);
    out.graph = WeightedGraph::build(detail::uniform_mu(out.positions.size()),
                                     std::move(b.edges));
    if (spec.conductance == 0.0)
      out.warnings.push_back(
          "gasket conductances use the p = 2 resistance renormalization "
          "(5/3)^level; the correct factor for p != 2 is unknown, so "
          "cross-level comparisons at p != 2 are measurements");
    else
      out.warnings.push_back("gasket conductance factor overridden; cross-level "
                             "normalization is exploratory");
    return out;
  }

  if (spec.family == "carpet") {
    require(spec.level >= 1 && spec.level <= 4, "carpet level in [1, 4]",
            "level = " + std::to_string(spec.level));
    long side = 1;
    for (int k = 0; k < spec.level; ++k) side *= 3;
    const double len = std::pow(3.0, -spec.level);
    const double factor = spec.conductance == 0.0 ? 1.0 : spec.conductance;
    const double w = std::pow(factor, spec.level);
    std::map<std::pair<long, long>, int> ids;
    std::vector<Edge> es;
    auto vertex = [&](long i, long j) {
      auto [it, fresh] = ids.try_emplace({i, j}, static_cast<int>(out.positions.size()));
      if (fresh)
        out.positions.push_back({static_cast<double>(i) / static_cast<double>(side),
                                 static_cast<double>(j) / static_cast<double>(side)});
      return it->second;
    };
    // Edges are the unit sides of retained cells; a side survives when either
    // incident cell does.
    for (long j = 0; j <= side; ++j)  // horizontal sides on row j
      for (long i = 0; i < side; ++i)
        if ((j < side && detail::carpet_cell(i, j, spec.level)) ||
            (j > 0 && detail::carpet_cell(i, j - 1, spec.level)))
          es.push_back({vertex(i, j), vertex(i + 1, j), w, len});
    for (long i = 0; i <= side; ++i)  // vertical sides on column i
      for (long j = 0; j < side; ++j)
        if ((i < side && detail::carpet_cell(i, j, spec.level)) ||
            (i > 0 && detail::carpet_cell(i - 1, j, spec.level)))
          es.push_back({vertex(i, j), vertex(i, j + 1), w, len});
    out.graph = WeightedGraph::build(detail::uniform_mu(out.positions.size()),
                                     std::move(es));
    if (spec.conductance == 0.0)
      out.warnings.push_back(
          "carpet conductance factor defaults to 1 per level: the carpet "
          "resistance renormalization has no closed form, so cross-level "
          "energy comparisons are measurements, not certificates");
    else
      out.warnings.push_back("carpet conductance factor overridden; cross-level "
                             "normalization is exploratory");
    return out;
  }

  throw PreconditionError("family in {path, cycle, lattice_box, gasket, carpet, dumbbell}",
                          "family = \"" + spec.family + "\"");
}

inline WeightedGraph generate(const FamilySpec& spec) {
  return generate_fixture(spec).graph;
}

// --- config plumbing --------------------------------------------------------

/// Parses one family entry, e.g. {"family":"gasket","level":3}.  Unknown keys
/// are rejected so config typos surface as errors rather than silent defaults.
inline FamilySpec family_spec_from_json(const nlohmann::json& j) {
  require(j.is_object(), "family entry is an object", j.dump());
  for (const auto& [key, value] : j.items()) {
    (void)value;
    require(key == "family" || key == "level" || key == "dim" || key == "neck" ||
                key == "conductance",
            "family entry keys in {family, level, dim, neck, conductance}",
            "unknown key \"" + key + "\"");
  }
  require(j.contains("family") && j["family"].is_string(), "family name is a string",
          j.dump());
  FamilySpec spec;
  spec.family = j["family"].get<std::string>();
  auto take_int = [&](const char* key, int& slot) {
    if (!j.contains(key)) return;
    require(j[key].is_number_integer(), "level/dim/neck are integers",
            std::string(key) + " = " + j[key].dump());
    slot = j[key].get<int>();
  };
  take_int("level", spec.level);
  take_int("dim", spec.dim);
  take_int("neck", spec.neck);
  if (j.contains("conductance")) {
    require(j["conductance"].is_number(), "conductance is a number",
            j["conductance"].dump());
    spec.conductance = j["conductance"].get<double>();
  }
  return spec;
}

inline nlohmann::json family_spec_to_json(const FamilySpec& spec) {
  nlohmann::json j{{"family", spec.family}, {"level", spec.level}};
  if (spec.family == "lattice_box") j["dim"] = spec.dim;
  if (spec.family == "dumbbell") j["neck"] = spec.neck;
  if (spec.conductance != 0.0) j["conductance"] = spec.conductance;
  return j;
}

}  // namespace pdlab
