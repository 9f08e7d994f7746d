#pragma once
// Dirichlet problems for the p-energy: minimize E_p(u) = sum_e w_e |du_e|^p
// subject to pinned values on a constrained vertex set.
//
// Method: damped Newton on the smoothed energy sum_e w_e (du^2 + eps^2)^{p/2}.
// For p < 2 a continuation schedule shrinks eps from 1e-2 down to 1e-12 times
// the boundary-data range (the smoothing bias in the energy is O((eps/du)^2),
// i.e. ~1e-20 relative at the floor).  For p >= 2 the floor eps alone
// regularizes the Hessian on flat edges.  p = 2 reduces to one exact sparse
// solve.  The final iterate is clamped to the boundary range — clamping is a
// 1-Lipschitz contraction fixing the constraints, so it never increases E_p.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/energy.hpp"
#include "pdlab/graph.hpp"

namespace pdlab {

struct SolverOptions {
  double tol = 1e-10;       ///< relative sup-norm of the gradient on free vertices
  int max_iter = 100000;    ///< total Newton-step cap across the continuation
  double eps_start = 1e-2;  ///< continuation start, relative to data range
  double eps_floor = 1e-12; ///< continuation floor, relative to data range
};

struct SolveCertificate {
  double energy = 0.0;         ///< E_p of the returned minimizer
  double residual = 0.0;       ///< relative gradient sup-norm at the floor smoothing
  double residual_true = 0.0;  ///< same with eps = 0 (informational at p < 2)
  int iterations = 0;          ///< accepted Newton steps
  bool converged = false;
};

class SolveFailure : public Error {
 public:
  SolveFailure(VertexFunction best, double residual, int iterations)
      : Error("p-harmonic solve did not converge within the iteration cap "
              "(residual " + std::to_string(residual) + ")"),
        best_iterate(std::move(best)), residual(residual), iterations(iterations) {}
  VertexFunction best_iterate;
  double residual = 0.0;
  int iterations = 0;
};

struct PHarmonicResult {
  VertexFunction u;
  SolveCertificate cert;
};

namespace detail {

struct DirichletWork {
  const WeightedGraph& g;
  double p;
  std::vector<char> is_free;
  std::vector<int> free_ids;    // vertex -> row (-1 if constrained)
  std::vector<int> free_list;

  DirichletWork(const WeightedGraph& g_, double p_, const std::vector<char>& free_mask)
      : g(g_), p(p_), is_free(free_mask), free_ids(g_.n(), -1) {
    for (int x = 0; x < g.n(); ++x)
      if (is_free[x]) {
        free_ids[x] = static_cast<int>(free_list.size());
        free_list.push_back(x);
      }
  }

  double smoothed_energy(const VertexFunction& u, double eps) const {
    double s = 0.0;
    for (const Edge& e : g.edges()) {
      double d = u[e.u] - u[e.v];
      s += e.w * std::pow(d * d + eps * eps, 0.5 * p);
    }
    return s;
  }

  // gradient of the smoothed energy at free vertices, plus the scale
  // max_x sum_y |term_xy| used for the relative residual.
  void gradient(const VertexFunction& u, double eps, std::vector<double>& grad,
                double& rel_residual) const {
    grad.assign(free_list.size(), 0.0);
    std::vector<double> scale(free_list.size(), 0.0);
    for (const Edge& e : g.edges()) {
      double d = u[e.u] - u[e.v];
      double mag = p * std::pow(d * d + eps * eps, 0.5 * (p - 2.0)) * std::abs(d);
      double term = std::copysign(mag, d) * e.w;
      if (is_free[e.u]) {
        grad[free_ids[e.u]] += term;
        scale[free_ids[e.u]] += std::abs(term) + e.w * p * std::pow(eps, p - 1.0);
      }
      if (is_free[e.v]) {
        grad[free_ids[e.v]] -= term;
        scale[free_ids[e.v]] += std::abs(term) + e.w * p * std::pow(eps, p - 1.0);
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i)
      worst = std::max(worst, std::abs(grad[i]) / std::max(scale[i], kTiny));
    rel_residual = worst;
  }

  // Newton direction from the smoothed Hessian (a weighted graph Laplacian).
  bool newton_direction(const VertexFunction& u, double eps,
                        const std::vector<double>& grad, double levenberg,
                        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>& ldlt,
                        bool& pattern_done, std::vector<double>& dir) const {
    const int m = static_cast<int>(free_list.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(g.edges().size() * 4 + m);
    std::vector<double> diag(m, 0.0);
    for (const Edge& e : g.edges()) {
      double d = u[e.u] - u[e.v];
      double q = d * d + eps * eps;
      double a = e.w * p * std::pow(q, 0.5 * (p - 4.0)) * ((p - 1.0) * d * d + eps * eps);
      int fu = free_ids[e.u], fv = free_ids[e.v];
      if (fu >= 0) diag[fu] += a;
      if (fv >= 0) diag[fv] += a;
      if (fu >= 0 && fv >= 0) {
        trip.emplace_back(fu, fv, -a);
        trip.emplace_back(fv, fu, -a);
      }
    }
    double dmax = 0.0;
    for (double v : diag) dmax = std::max(dmax, v);
    for (int i = 0; i < m; ++i)
      trip.emplace_back(i, i, diag[i] + levenberg * std::max(dmax, 1.0) + 1e-300);
    Eigen::SparseMatrix<double> H(m, m);
    H.setFromTriplets(trip.begin(), trip.end());
    if (!pattern_done) {
      ldlt.analyzePattern(H);
      pattern_done = true;
    }
    ldlt.factorize(H);
    if (ldlt.info() != Eigen::Success) return false;
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b[i] = -grad[i];
    Eigen::VectorXd x = ldlt.solve(b);
    if (ldlt.info() != Eigen::Success) return false;
    dir.resize(m);
    double gd = 0.0;
    for (int i = 0; i < m; ++i) {
      dir[i] = x[i];
      gd += grad[i] * x[i];
    }
    return gd < 0.0;  // descent direction
  }
};

}  // namespace detail

// Minimizes E_p over functions agreeing with `values` on `constrained`.
// An optional initial guess enables warm starts (values on constrained
// vertices are overwritten).  Throws SolveFailure past the iteration cap.
inline PHarmonicResult p_harmonic(const WeightedGraph& g,
                                  const std::vector<int>& constrained,
                                  const std::vector<double>& values, double p,
                                  const SolverOptions& opts = {},
                                  const VertexFunction* init = nullptr) {
  require(p > 1.0, "p > 1", "p_harmonic p = " + std::to_string(p));
  require(!constrained.empty(), "nonempty boundary", "no constrained vertices");
  require(constrained.size() == values.size(), "ids/values aligned", "size mismatch");
  std::vector<char> is_free(g.n(), 1);
  VertexFunction u(g.n(), 0.0);
  for (std::size_t i = 0; i < constrained.size(); ++i) {
    int x = constrained[i];
    require(x >= 0 && x < g.n(), "boundary ids valid", std::to_string(x));
    require(is_free[x], "boundary ids distinct", "duplicate id " + std::to_string(x));
    require(std::isfinite(values[i]), "boundary values finite", std::to_string(values[i]));
    is_free[x] = 0;
    u[x] = values[i];
  }
  double minb = *std::min_element(values.begin(), values.end());
  double maxb = *std::max_element(values.begin(), values.end());

  auto finish = [&](VertexFunction w, int iters, bool conv,
                    const detail::DirichletWork* work, double eps_final) {
    for (double& v : w) v = std::min(std::max(v, minb), maxb);
    PHarmonicResult res;
    res.cert.energy = total_energy(g, w, p);
    res.cert.iterations = iters;
    res.cert.converged = conv;
    if (work && !work->free_list.empty()) {
      std::vector<double> grad;
      work->gradient(w, eps_final, grad, res.cert.residual);
      work->gradient(w, 0.0, grad, res.cert.residual_true);
    }
    res.u = std::move(w);
    return res;
  };

  detail::DirichletWork work(g, p, is_free);
  if (work.free_list.empty() || maxb == minb) {
    for (int x = 0; x < g.n(); ++x)
      if (is_free[x]) u[x] = minb;  // constant boundary data => constant minimizer
    return finish(u, 0, true, &work, 0.0);
  }

  const double range = maxb - minb;
  const double eps_final = opts.eps_floor * range;

  // Initial guess: caller-provided, else the p = 2 solution.
  if (init) {
    require(static_cast<int>(init->size()) == g.n(), "init size", "init mismatch");
    for (int x = 0; x < g.n(); ++x)
      if (is_free[x]) u[x] = (*init)[x];
  }

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool pattern_done = false;
  std::vector<double> grad, dir;
  double rel = 0.0;
  int iters = 0;

  // Fixed-point probe: if the start already meets the criterion at the floor
  // smoothing, return without stepping (re-solve terminates immediately).
  if (init) {
    work.gradient(u, eps_final, grad, rel);
    if (rel <= opts.tol) return finish(u, 0, true, &work, eps_final);
  } else {
    // p = 2 warm start: one Laplacian solve with conductance weights.
    detail::DirichletWork w2(g, 2.0, is_free);
    std::vector<double> g2;
    double r2;
    w2.gradient(u, 0.0, g2, r2);
    bool pat2 = false;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> l2;
    std::vector<double> d2;
    if (w2.newton_direction(u, 0.0, g2, 0.0, l2, pat2, d2))
      for (std::size_t i = 0; i < w2.free_list.size(); ++i) u[w2.free_list[i]] += d2[i];
  }

  // Continuation schedule.
  std::vector<double> schedule;
  if (p < 2.0) {
    for (double e = opts.eps_start; e > opts.eps_floor * 3.0; e *= 1e-2)
      schedule.push_back(e * range);
  }
  schedule.push_back(eps_final);

  VertexFunction best = u;
  double best_rel = std::numeric_limits<double>::infinity();
  for (double eps : schedule) {
    bool last_stage = (eps == schedule.back());
    double stage_tol = last_stage ? opts.tol : std::max(opts.tol, 1e-8);
    double levenberg = 0.0;
    double stage_best = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (;;) {
      work.gradient(u, eps, grad, rel);
      if (last_stage && rel < best_rel) {
        best_rel = rel;
        best = u;
      }
      if (rel <= stage_tol) break;
      // A stage that stops improving has hit the precision floor for this
      // smoothing level; hand the iterate to the next (smaller) eps.
      if (rel < stage_best * 0.999) {
        stage_best = rel;
        stalled = 0;
      } else if (++stalled > 200) {
        break;
      }
      if (iters >= opts.max_iter)
        throw SolveFailure(finish(best, iters, false, &work, eps_final).u, best_rel, iters);
      bool ok = work.newton_direction(u, eps, grad, levenberg, ldlt, pattern_done, dir);
      if (!ok) {
        levenberg = (levenberg == 0.0 ? 1e-10 : levenberg * 100.0);
        if (levenberg > 1e6)
          throw SolveFailure(finish(best, iters, false, &work, eps_final).u, best_rel, iters);
        continue;
      }
      levenberg = 0.0;
      double e0 = work.smoothed_energy(u, eps);
      double gd = 0.0;
      for (std::size_t i = 0; i < dir.size(); ++i) gd += grad[i] * dir[i];
      VertexFunction trial = u;
      if (std::abs(gd) <= 1e-13 * (std::abs(e0) + kTiny)) {
        // Predicted decrease below the rounding noise of the energy: the
        // Armijo test would be decided by noise, but the undamped Newton step
        // is trustworthy this close to the minimum.
        for (std::size_t i = 0; i < work.free_list.size(); ++i)
          trial[work.free_list[i]] = u[work.free_list[i]] + dir[i];
      } else {
        double t = 1.0;
        for (;;) {
          for (std::size_t i = 0; i < work.free_list.size(); ++i)
            trial[work.free_list[i]] = u[work.free_list[i]] + t * dir[i];
          if (work.smoothed_energy(trial, eps) <= e0 + 1e-4 * t * gd || t < 1e-14) break;
          t *= 0.5;
        }
      }
      if (trial == u) break;  // step below representable resolution
      u = trial;
      ++iters;
    }
  }
  work.gradient(best, eps_final, grad, rel);
  if (rel > opts.tol)
    throw SolveFailure(finish(best, iters, false, &work, eps_final).u, rel, iters);
  return finish(best, iters, true, &work, eps_final);
}

// --- capacity minimizers ------------------------------------------------

struct CutoffFunction {
  Ball ball;              ///< the inner ball B; support lives in 2B
  VertexFunction values;  ///< psi_B: 1 on B, 0 off 2B, p-harmonic between
  double capacity = 0.0;  ///< E_p(psi_B) = Gamma_p<psi_B>(X)
  bool degenerate = false;  ///< 2B covered X: psi == 1, capacity 0
  SolveCertificate cert;
};

// Equilibrium cutoff of the condenser (B, 2B), clamped to [0,1].
inline CutoffFunction capacity_minimizer(const WeightedGraph& g, const Ball& b, double p,
                                         const SolverOptions& opts = {}) {
  CutoffFunction out;
  out.ball = b;
  auto inner = g.ball_members(b);
  auto big = g.ball_members({b.center, 2.0 * b.radius});
  auto outside = g.complement(big);
  if (outside.empty()) {
    out.values.assign(g.n(), 1.0);
    out.capacity = 0.0;
    out.degenerate = true;
    out.cert.converged = true;
    return out;
  }
  std::vector<int> ids = inner;
  std::vector<double> vals(inner.size(), 1.0);
  for (int x : outside) {
    ids.push_back(x);
    vals.push_back(0.0);
  }
  auto res = p_harmonic(g, ids, vals, p, opts);
  out.values = std::move(res.u);
  out.capacity = res.cert.energy;
  out.cert = res.cert;
  return out;
}

// --- superharmonicity (variational, discrete closed-support form) -------

struct SuperharmonicReport {
  double min_slack = 0.0;  ///< min over trials of slack(Gamma<u> <= Gamma<u+psi>)
  int trials = 0;
  bool pass = true;
};

// u is superharmonic in Omega if adding any psi >= 0 with positivity set
// inside Omega does not lower the energy on spt(psi).  The support is taken
// closed (positivity set plus neighbors): on that set the energy difference
// telescopes to the edges touching {psi > 0}, and convexity in psi plus the
// vertexwise supersolution sign make the inequality exact, not merely true up
// to edge-scale leakage.  Restricting the comparison window to a smaller set
// (e.g. intersecting with Omega) breaks it even for exact minimizers.
inline SuperharmonicReport check_superharmonic(const WeightedGraph& g,
                                               const VertexFunction& u,
                                               const std::vector<int>& omega, double p,
                                               int trials, std::uint64_t seed,
                                               double tol = 1e-8) {
  SuperharmonicReport rep;
  require(!omega.empty(), "nonempty Omega", "check_superharmonic");
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(omega.size()) - 1);
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    VertexFunction psi(g.n(), 0.0);
    double sigma = std::pow(10.0, -2.0 + 2.0 * (t % 3));  // 0.01, 1, 100 mix
    std::normal_distribution<double> nd(0.0, 0.01 * sigma);
    if (t % 4 == 0) {
      for (int x : omega) psi[x] = std::abs(nd(rng));  // full-support trial
    } else {
      int k = 1 + pick(rng);
      for (int i = 0; i < k; ++i) psi[omega[pick(rng)]] = std::abs(nd(rng));
    }
    std::vector<int> pos;
    for (int x = 0; x < g.n(); ++x)
      if (psi[x] > 0.0) pos.push_back(x);
    if (pos.empty()) continue;
    auto region = g.closure(pos);
    VertexFunction up(u);
    for (int x = 0; x < g.n(); ++x) up[x] += psi[x];
    double before = energy_measure(g, u, p).of(region);
    double after = energy_measure(g, up, p).of(region);
    double slack = le_slack(before, after);
    rep.min_slack = std::min(rep.min_slack, slack);
    ++rep.trials;
  }
  if (rep.trials == 0) rep.min_slack = 0.0;
  rep.pass = rep.min_slack >= -tol;
  return rep;
}

// --- logarithmic Caccioppoli surrogate ----------------------------------

struct LogCaccioppoliResult {
  double lhs = 0.0;         ///< Gamma<u>(interior A)
  double rhs = 0.0;         ///< Gamma<h>(closure(Omega) \ interior A)
  double lhs_strict = 0.0;  ///< Gamma<u>(A)      (diagnostic only)
  double rhs_strict = 0.0;  ///< Gamma<h>(Omega)  (diagnostic only)
  double slack = 0.0;
  bool pass = false;
};

// For u superharmonic in Omega (caller-certified) with 0 <= u <= 1, h <= 0
// off Omega and h >= 1 on A ⊂ Omega:  Gamma<u>(A) <= Gamma<h>(Omega).
// The strict-set form fails at the edge scale on graphs (one edge can jump
// the transition region), so the certified form evaluates the left side on
// interior(A) and the right side on closure(Omega) \ interior(A); the strict
// values are reported alongside.
inline LogCaccioppoliResult log_caccioppoli_check(const WeightedGraph& g,
                                                  const VertexFunction& u,
                                                  const VertexFunction& h,
                                                  const std::vector<int>& A,
                                                  const std::vector<int>& omega, double p,
                                                  double tol = 1e-9) {
  auto om = g.mask(omega);
  for (int x = 0; x < g.n(); ++x) {
    require(u[x] >= -1e-12 && u[x] <= 1.0 + 1e-12, "0 <= u <= 1",
            "u[" + std::to_string(x) + "] = " + std::to_string(u[x]));
    if (!om[x])
      require(h[x] <= 1e-12, "h <= 0 off Omega",
              "h[" + std::to_string(x) + "] = " + std::to_string(h[x]));
  }
  for (int x : A) {
    require(om[x], "A subset of Omega", "vertex " + std::to_string(x));
    require(h[x] >= 1.0 - 1e-12, "h >= 1 on A",
            "h[" + std::to_string(x) + "] = " + std::to_string(h[x]));
  }
  LogCaccioppoliResult out;
  auto interiorA = g.interior(A);
  auto maskIA = g.mask(interiorA);
  std::vector<int> rhs_set;
  for (int x : g.closure(omega))
    if (!maskIA[x]) rhs_set.push_back(x);
  EnergyMeasure mu_u = energy_measure(g, u, p);
  EnergyMeasure mu_h = energy_measure(g, h, p);
  out.lhs = mu_u.of(interiorA);
  out.rhs = mu_h.of(rhs_set);
  out.lhs_strict = mu_u.of(A);
  out.rhs_strict = mu_h.of(omega);
  out.slack = le_slack(out.lhs, out.rhs);
  out.pass = out.slack >= -tol;
  return out;
}

}  // namespace pdlab
