#pragma once
// Shared test fixtures and independent oracles.  Oracles deliberately use
// different algorithms from the library (Floyd–Warshall vs Dijkstra, scalar
// golden-section vs Newton) so agreement is evidence, not tautology.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "pdlab/graph.hpp"

namespace testutil {

inline pdlab::WeightedGraph make_path(int edges, double w = 1.0, double len = 1.0) {
  std::vector<double> mu(edges + 1, 1.0);
  std::vector<pdlab::Edge> es;
  for (int i = 0; i < edges; ++i) es.push_back({i, i + 1, w, len});
  return pdlab::WeightedGraph::build(mu, es);
}

inline pdlab::WeightedGraph make_cycle(int n, double w = 1.0, double len = 1.0) {
  std::vector<double> mu(n, 1.0);
  std::vector<pdlab::Edge> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n, w, len});
  return pdlab::WeightedGraph::build(mu, es);
}

inline pdlab::WeightedGraph make_grid(int rows, int cols, double w = 1.0) {
  std::vector<double> mu(rows * cols, 1.0);
  std::vector<pdlab::Edge> es;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) es.push_back({id(r, c), id(r, c + 1), w, 1.0});
      if (r + 1 < rows) es.push_back({id(r, c), id(r + 1, c), w, 1.0});
    }
  return pdlab::WeightedGraph::build(mu, es);
}

// Random connected graph: spanning tree plus extra edges, random weights.
inline pdlab::WeightedGraph random_connected(int n, std::mt19937_64& rng,
                                             bool random_mu = true) {
  std::uniform_real_distribution<double> wdist(0.2, 5.0);
  std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
  std::vector<double> mu(n, 1.0);
  if (random_mu)
    for (double& m : mu) m = wdist(rng);
  std::vector<pdlab::Edge> es;
  std::set<std::pair<int, int>> seen;
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    es.push_back({u, v, wdist(rng), 1.0});
    seen.insert({u, v});
  }
  int extras = n / 2;
  for (int k = 0; k < extras; ++k) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (seen.count({key.first, key.second})) continue;
    seen.insert({key.first, key.second});
    es.push_back({key.first, key.second, wdist(rng), 1.0});
  }
  return pdlab::WeightedGraph::build(mu, es);
}

// Floyd–Warshall all-pairs oracle.
inline std::vector<std::vector<double>> floyd_oracle(const pdlab::WeightedGraph& g) {
  int n = g.n();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : g.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.len);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.len);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Golden-section minimizer for 1-D convex functions (solver oracle).
template <class F>
double golden_min(F f, double lo, double hi, int iters = 200) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace testutil
