#pragma once
// p-energy measures on weighted graphs.
//
//   Gamma_p<f>(x) = 1/2 * sum_{y ~ x} w_xy |f(x)-f(y)|^p
//
// Each edge's energy w|df|^p is split half/half between its endpoints, so
// Gamma_p<f>(X) equals the total p-Dirichlet energy E_p(f).  Strong locality
// holds only in the interior form on graphs: f constant on A and its boundary
// implies Gamma_p<f>(A) = 0.  Downstream checks therefore evaluate measures on
// interior/closure-inflated sets where the continuum argument needs locality.

#include <algorithm>
#include <cmath>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/graph.hpp"

namespace pdlab {

struct EnergyMeasure {
  double p = 2.0;
  std::vector<double> mass;  ///< per-vertex half-edge masses

  double total() const {
    double s = 0.0;
    for (double v : mass) s += v;
    return s;
  }
  double of(const std::vector<int>& set) const {
    double s = 0.0;
    for (int x : set) s += mass[x];
    return s;
  }
};

inline EnergyMeasure energy_measure(const WeightedGraph& g, const VertexFunction& f,
                                    double p) {
  require(p > 1.0, "p > 1", "energy_measure p = " + std::to_string(p));
  require(static_cast<int>(f.size()) == g.n(), "f defined on all vertices",
          "size mismatch");
  EnergyMeasure m;
  m.p = p;
  m.mass.assign(g.n(), 0.0);
  for (const Edge& e : g.edges()) {
    double half = 0.5 * e.w * pow_abs(f[e.u] - f[e.v], p);
    m.mass[e.u] += half;
    m.mass[e.v] += half;
  }
  return m;
}

inline double total_energy(const WeightedGraph& g, const VertexFunction& f, double p) {
  double s = 0.0;
  for (const Edge& e : g.edges()) s += e.w * pow_abs(f[e.u] - f[e.v], p);
  return s;
}

// sum_{x in set} |f(x) - c|^p * weight(x); the "integral against an energy
// measure" used by the cutoff-Sobolev quantities.
inline double p_integral(const std::vector<int>& set, const VertexFunction& f, double c,
                         double p, const std::vector<double>& weight) {
  double s = 0.0;
  for (int x : set) s += pow_abs(f[x] - c, p) * weight[x];
  return s;
}

// --- axiom verification -------------------------------------------------

struct AxiomCheck {
  double worst_slack = 0.0;  ///< min over trials; negative = violation
  bool pass = true;
  std::string witness;  ///< short description of the worst trial
};

struct AxiomsReport {
  AxiomCheck homogeneity;   ///< Gamma<t f> = |t|^p Gamma<f>, per vertex
  AxiomCheck triangle;      ///< Gamma<f+g>(A)^{1/p} <= Gamma<f>(A)^{1/p} + Gamma<g>(A)^{1/p}
  AxiomCheck contraction;   ///< Gamma<T∘f> <= LIP[T]^p Gamma<f>, per vertex
  AxiomCheck locality;      ///< f const on A ∪ ∂A  =>  Gamma<f>(A) = 0
  AxiomCheck continuity;    ///< E_p is continuous under uniform perturbation
  bool pass() const {
    return homogeneity.pass && triangle.pass && contraction.pass && locality.pass &&
           continuity.pass;
  }
};

namespace detail {

inline VertexFunction random_function(const WeightedGraph& g, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  VertexFunction f(g.n());
  for (double& v : f) v = nd(rng);
  return f;
}

inline std::vector<int> random_subset(int n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> s;
  for (int x = 0; x < n; ++x)
    if (coin(rng)) s.push_back(x);
  return s;
}

// Random piecewise-linear map with slopes in [-L, L]: a 1-Lipschitz test
// family when L = 1.  Breakpoints on a fixed grid spanning the data range.
struct PiecewiseLinear {
  double x0 = 0.0, dx = 1.0;
  std::vector<double> values;  // at x0 + k*dx

  double operator()(double t) const {
    int k = static_cast<int>(std::floor((t - x0) / dx));
    k = std::max(0, std::min(k, static_cast<int>(values.size()) - 2));
    double s = (t - (x0 + k * dx)) / dx;
    return values[k] * (1.0 - s) + values[k + 1] * s;
  }
};

inline PiecewiseLinear random_lipschitz_map(double lo, double hi, double lip, Rng& rng) {
  PiecewiseLinear pl;
  int cells = 8;
  pl.x0 = lo - 1.0;
  pl.dx = (hi - lo + 2.0) / cells;
  std::uniform_real_distribution<double> slope(-lip, lip);
  pl.values.resize(cells + 1);
  pl.values[0] = 0.0;
  for (int k = 1; k <= cells; ++k)
    pl.values[k] = pl.values[k - 1] + slope(rng) * pl.dx;
  return pl;
}

}  // namespace detail

// Randomized verification of the energy-measure axioms.  All inequalities are
// mathematically exact here; slack tolerances only absorb rounding.
inline AxiomsReport axioms_report(const WeightedGraph& g, double p, int trials,
                                  std::uint64_t seed) {
  Rng rng(seed);
  AxiomsReport rep;
  auto note = [](AxiomCheck& c, double slack, const std::string& witness, double tol) {
    if (slack < c.worst_slack || c.witness.empty()) {
      c.worst_slack = std::min(slack, c.worst_slack);
      c.witness = witness;
    }
    if (slack < -tol) c.pass = false;
  };
  const double tol = 1e-9;
  std::uniform_real_distribution<double> scale(-3.0, 3.0);

  for (int t = 0; t < trials; ++t) {
    VertexFunction f = detail::random_function(g, rng);
    VertexFunction h = detail::random_function(g, rng);
    EnergyMeasure mf = energy_measure(g, f, p);
    EnergyMeasure mh = energy_measure(g, h, p);

    // homogeneity, vertexwise
    double lam = scale(rng);
    VertexFunction lf(f);
    for (double& v : lf) v *= lam;
    EnergyMeasure ml = energy_measure(g, lf, p);
    double fac = pow_abs(lam, p);
    for (int x = 0; x < g.n(); ++x) {
      double s = -relative_gap(ml.mass[x], fac * mf.mass[x]);
      note(rep.homogeneity, s, "vertex " + std::to_string(x) + " trial " + std::to_string(t), tol);
    }

    // triangle inequality on a random vertex set (Minkowski over half-edges)
    auto A = detail::random_subset(g.n(), rng);
    VertexFunction fh(f);
    for (int x = 0; x < g.n(); ++x) fh[x] += h[x];
    EnergyMeasure mfh = energy_measure(g, fh, p);
    double lhs = std::pow(mfh.of(A), 1.0 / p);
    double rhs = std::pow(mf.of(A), 1.0 / p) + std::pow(mh.of(A), 1.0 / p);
    note(rep.triangle, le_slack(lhs, rhs), "set trial " + std::to_string(t), tol);

    // Lipschitz contraction, vertexwise
    double lo = *std::min_element(f.begin(), f.end());
    double hi = *std::max_element(f.begin(), f.end());
    double lip = 1.0;
    auto T = detail::random_lipschitz_map(lo, hi, lip, rng);
    VertexFunction tf(g.n());
    for (int x = 0; x < g.n(); ++x) tf[x] = T(f[x]);
    EnergyMeasure mt = energy_measure(g, tf, p);
    for (int x = 0; x < g.n(); ++x) {
      double s = le_slack(mt.mass[x], std::pow(lip, p) * mf.mass[x]);
      note(rep.contraction, s, "vertex " + std::to_string(x), tol);
    }

    // interior locality: constant on closure(A)  =>  no mass on A
    VertexFunction c(f);
    auto cl = g.closure(A);
    double cval = scale(rng);
    for (int x : cl) c[x] = cval;
    EnergyMeasure mc = energy_measure(g, c, p);
    note(rep.locality, le_slack(mc.of(A), 0.0), "locality trial " + std::to_string(t), tol);

    // continuity of total energy under uniform perturbations -> 0
    double base = mf.total();
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double epsv : {1e-3, 1e-6, 1e-9}) {
      VertexFunction pf(f);
      std::uniform_real_distribution<double> u(-epsv, epsv);
      for (double& v : pf) v += u(rng);
      double gap = std::abs(total_energy(g, pf, p) - base);
      // gaps must decrease to 0 with the perturbation size
      note(rep.continuity, le_slack(gap, std::max(prev_gap, 1e-6)), "eps " + std::to_string(epsv), tol);
      prev_gap = gap;
    }
  }
  return rep;
}

}  // namespace pdlab
