#pragma once
// Finite weighted graph as a metric measure space.
//
// Vertices carry a measure mu > 0; edges carry a conductance w > 0 (used by
// energies) and a length len > 0 (used by the path metric).  The graph is
// immutable after build(): the all-pairs shortest-path metric is computed once
// and every operation downstream is a pure function of it.
//
// Convention: balls are open, B(x,r) = { y : d(x,y) < r }.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdlab/core.hpp"

namespace pdlab {

struct Edge {
  int u = 0, v = 0;
  double w = 1.0;    ///< conductance
  double len = 1.0;  ///< metric length
};

struct Ball {
  int center = 0;
  double radius = 0.0;
};

class WeightedGraph {
 public:
  // Validates positivity and connectivity, builds adjacency and the metric.
  static WeightedGraph build(std::vector<double> mu, std::vector<Edge> edges) {
    WeightedGraph g;
    g.mu_ = std::move(mu);
    g.edges_ = std::move(edges);
    const int n = static_cast<int>(g.mu_.size());
    require(n > 0, "nonempty vertex set", "graph has no vertices");
    for (int i = 0; i < n; ++i)
      require(g.mu_[i] > 0.0, "mu > 0",
              "vertex " + std::to_string(i) + " has mu = " + std::to_string(g.mu_[i]));
    g.adj_.assign(n, {});
    for (std::size_t k = 0; k < g.edges_.size(); ++k) {
      const Edge& e = g.edges_[k];
      require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n && e.u != e.v,
              "edge endpoints valid", "edge " + std::to_string(k));
      require(e.w > 0.0 && e.len > 0.0, "w > 0 and len > 0",
              "edge " + std::to_string(k));
      g.adj_[e.u].push_back({e.v, static_cast<int>(k)});
      g.adj_[e.v].push_back({e.u, static_cast<int>(k)});
    }
    g.total_mu_ = 0.0;
    for (double m : g.mu_) g.total_mu_ += m;
    g.compute_metric();
    return g;
  }

  int n() const { return static_cast<int>(mu_.size()); }
  const std::vector<double>& mu() const { return mu_; }
  double mu(int x) const { return mu_[x]; }
  double total_mu() const { return total_mu_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // (neighbor, edge index) pairs.
  const std::vector<std::pair<int, int>>& neighbors(int x) const { return adj_[x]; }

  double dist(int x, int y) const { return dist_[static_cast<std::size_t>(x) * n() + y]; }
  double diameter() const { return diameter_; }

  // --- balls ------------------------------------------------------------

  std::vector<int> ball_members(const Ball& b) const {
    require(b.radius > 0.0, "radius > 0", "ball radius " + std::to_string(b.radius));
    std::vector<int> out;
    for (int y = 0; y < n(); ++y)
      if (dist(b.center, y) < b.radius) out.push_back(y);
    return out;
  }

  double mu_of(const std::vector<int>& set) const {
    double s = 0.0;
    for (int x : set) s += mu_[x];
    return s;
  }

  double mu_of_ball(const Ball& b) const { return mu_of(ball_members(b)); }

  // mu-average of f over a vertex set.
  double average(const VertexFunction& f, const std::vector<int>& set) const {
    require(!set.empty(), "nonempty set", "average over empty set");
    double s = 0.0, m = 0.0;
    for (int x : set) {
      s += mu_[x] * f[x];
      m += mu_[x];
    }
    return s / m;
  }

  std::vector<double> realized_distances(int center) const {
    std::vector<double> ds(dist_.begin() + static_cast<std::size_t>(center) * n(),
                           dist_.begin() + static_cast<std::size_t>(center + 1) * n());
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
  }

  // Moves r to the midpoint of the bracketing pair of realized distances from
  // this center, so membership is insensitive to ties; r beyond the largest
  // realized distance is returned unchanged (capped at 2*diameter).
  double snap_radius(int center, double r) const {
    require(r > 0.0, "radius > 0", "snap_radius r = " + std::to_string(r));
    r = std::min(r, 2.0 * diameter_);
    auto ds = realized_distances(center);
    // bracketing pair with d_lo < r <= d_hi
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (double d : ds) {
      if (d < r) lo = std::max(lo, d);
      if (d >= r) { hi = d; break; }
    }
    if (!std::isfinite(hi)) return r;
    return 0.5 * (lo + hi);
  }

  // min distance from x to a vertex set (+inf if empty).
  double dist_to_set(int x, const std::vector<int>& set) const {
    double best = std::numeric_limits<double>::infinity();
    for (int y : set) best = std::min(best, dist(x, y));
    return best;
  }

  // --- discrete topology helpers ---------------------------------------

  std::vector<char> mask(const std::vector<int>& set) const {
    std::vector<char> m(n(), 0);
    for (int x : set) m[x] = 1;
    return m;
  }

  static std::vector<int> unmask(const std::vector<char>& m) {
    std::vector<int> out;
    for (int x = 0; x < static_cast<int>(m.size()); ++x)
      if (m[x]) out.push_back(x);
    return out;
  }

  // Vertices of A all of whose neighbors are in A.
  std::vector<int> interior(const std::vector<int>& set) const {
    auto m = mask(set);
    std::vector<int> out;
    for (int x : set) {
      bool inner = true;
      for (auto [y, e] : adj_[x])
        if (!m[y]) { inner = false; break; }
      if (inner) out.push_back(x);
    }
    return out;
  }

  // A together with its graph neighbors.
  std::vector<int> closure(const std::vector<int>& set) const {
    auto m = mask(set);
    for (int x : set)
      for (auto [y, e] : adj_[x]) m[y] = 1;
    return unmask(m);
  }

  std::vector<int> complement(const std::vector<int>& set) const {
    auto m = mask(set);
    std::vector<int> out;
    for (int x = 0; x < n(); ++x)
      if (!m[x]) out.push_back(x);
    return out;
  }

  // Metric closure of a ball: members plus vertices at distance exactly r.
  std::vector<int> ball_closure(const Ball& b) const {
    std::vector<int> out;
    for (int y = 0; y < n(); ++y)
      if (dist(b.center, y) <= b.radius) out.push_back(y);
    return out;
  }

 private:
  void compute_metric() {
    const int nn = n();
    dist_.assign(static_cast<std::size_t>(nn) * nn,
                 std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::vector<double> d(nn);
    for (int s = 0; s < nn; ++s) {
      std::fill(d.begin(), d.end(), std::numeric_limits<double>::infinity());
      d[s] = 0.0;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [dx, x] = pq.top();
        pq.pop();
        if (dx > d[x]) continue;
        for (auto [y, e] : adj_[x]) {
          double dy = dx + edges_[e].len;
          if (dy < d[y]) {
            d[y] = dy;
            pq.push({dy, y});
          }
        }
      }
      for (int y = 0; y < nn; ++y) {
        require(std::isfinite(d[y]), "graph connected",
                "vertex " + std::to_string(y) + " unreachable from " + std::to_string(s));
        dist_[static_cast<std::size_t>(s) * nn + y] = d[y];
      }
    }
    diameter_ = 0.0;
    for (double v : dist_) diameter_ = std::max(diameter_, v);
  }

  std::vector<double> mu_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<double> dist_;
  double total_mu_ = 0.0;
  double diameter_ = 0.0;
};

// Greedy eps-net of `host` in ascending vertex id: pairwise distances >= eps,
// maximal (every host vertex is within < eps of the net).  Deterministic.
inline std::vector<int> build_net(const WeightedGraph& g, const std::vector<int>& host,
                                  double eps) {
  require(eps > 0.0, "eps > 0", "build_net eps = " + std::to_string(eps));
  std::vector<int> net;
  for (int x : host) {
    bool separated = true;
    for (int y : net)
      if (g.dist(x, y) < eps) { separated = false; break; }
    if (separated) net.push_back(x);
  }
  return net;
}

struct DoublingSample {
  Ball ball;
  double ratio = 0.0;  ///< mu(B(x,2r)) / mu(B(x,r))
};

struct DoublingEstimate {
  double constant = 0.0;  ///< max ratio over samples
  std::vector<DoublingSample> samples;
};

// Volume-doubling constant over the given (center, radius) samples.
inline DoublingEstimate doubling_constant(const WeightedGraph& g,
                                          const std::vector<Ball>& samples) {
  DoublingEstimate est;
  for (const Ball& b : samples) {
    double small = g.mu_of_ball(b);
    double big = g.mu_of_ball({b.center, 2.0 * b.radius});
    DoublingSample s{b, big / small};
    est.constant = std::max(est.constant, s.ratio);
    est.samples.push_back(s);
  }
  return est;
}

// Default certification sample policy: centers on a net at scale diam/8,
// radii {diam/16, diam/8, diam/4} snapped to realized-distance midpoints.
inline std::vector<Ball> default_ball_policy(const WeightedGraph& g) {
  double diam = g.diameter();
  std::vector<int> all(g.n());
  for (int i = 0; i < g.n(); ++i) all[i] = i;
  auto centers = build_net(g, all, diam / 8.0);
  std::vector<Ball> balls;
  for (int c : centers)
    for (double r : {diam / 16.0, diam / 8.0, diam / 4.0})
      balls.push_back({c, g.snap_radius(c, r)});
  return balls;
}

// --- JSON graph format -------------------------------------------------
// { "vertices": [ {"id": int, "mu": float}, ... ],
//   "edges":    [ {"u": int, "v": int, "w": float, "len": float}, ... ] }

inline nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (int i = 0; i < g.n(); ++i)
    j["vertices"].push_back({{"id", i}, {"mu", g.mu(i)}});
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges())
    j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"w", e.w}, {"len", e.len}});
  return j;
}

inline WeightedGraph graph_from_json(const nlohmann::json& j) {
  require(j.contains("vertices") && j.contains("edges"), "graph json shape",
          "missing vertices/edges");
  const auto& vs = j.at("vertices");
  std::vector<double> mu(vs.size(), 0.0);
  std::vector<char> seen(vs.size(), 0);
  for (const auto& v : vs) {
    int id = v.at("id").get<int>();
    require(id >= 0 && id < static_cast<int>(vs.size()) && !seen[id],
            "vertex ids are 0..n-1 and unique", "id " + std::to_string(id));
    seen[id] = 1;
    mu[id] = v.at("mu").get<double>();
  }
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    Edge ed;
    ed.u = e.at("u").get<int>();
    ed.v = e.at("v").get<int>();
    ed.w = e.at("w").get<double>();
    ed.len = e.contains("len") ? e.at("len").get<double>() : 1.0;
    edges.push_back(ed);
  }
  return WeightedGraph::build(std::move(mu), std::move(edges));
}

}  // namespace pdlab
