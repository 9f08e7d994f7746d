#pragma once
// Best-constant certification for the inequality family: capacity upper
// bounds, Poincare, cutoff-Sobolev in centered and classical form, the
// level-set truncation audit, and the constructive pipeline assembling a
// cutoff-Sobolev bound from capacity + Poincare via Whitney blending.
//
// Every sup-type constant is the supremum of a ratio N(f)/D(f) with
//   N(f) = sum_x omega_x |f(x) - f_C|^p   (f_C an optional mu-average),
//   D(f) = Gamma_p<f>(S) + sum_x d_x |f(x)|^p.
// For p = 2 the supremum is computed exactly through the symmetric eigenvalue
// pencil of the two quadratic forms.  For p != 2 projected gradient ascent
// from structured and random starts certifies a lower bound; the value is
// always re-evaluated exactly at the returned witness.  A combinatorial
// pre-check detects blow-up directions (indicator of a denominator-free
// component moving the numerator) and certifies an infinite constant.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pdlab/blending.hpp"
#include "pdlab/core.hpp"
#include "pdlab/energy.hpp"
#include "pdlab/graph.hpp"
#include "pdlab/scale.hpp"
#include "pdlab/solver.hpp"

namespace pdlab {

// --- ratio problems -------------------------------------------------------

enum class CertMethod { kExactEigen, kIterativeLowerBound, kBruteForce };

inline const char* cert_method_name(CertMethod m) {
  switch (m) {
    case CertMethod::kExactEigen: return "exact-eigen";
    case CertMethod::kIterativeLowerBound: return "iterative-lower-bound";
    case CertMethod::kBruteForce: return "brute-force";
  }
  return "unknown";
}

struct RatioProblem {
  VertexFunction num_weight;  ///< omega >= 0 on every vertex
  std::vector<int> center;    ///< centering set C (empty: no centering)
  std::vector<int> denom_set; ///< energy window S (half-edge membership rule)
  VertexFunction denom_weight;///< optional additive |f|^p weight (empty: none)
};

struct RatioOptions {
  enum class Route { kAuto, kEigen, kIterative };
  Route route = Route::kAuto;  ///< kAuto: eigen at p = 2, ascent otherwise
  int restarts = 32;           ///< random ascent starts
  int max_iters = 400;         ///< ascent iteration cap per start
  std::uint64_t seed = 0x9d2c5680aull;
  double tol = 1e-12;          ///< relative-gain stall threshold
  double kernel_tol = 1e-12;   ///< ker(D) eigenvalue cut, relative to the top
  std::vector<VertexFunction> starts;  ///< extra structured starts
};

struct RatioCertificate {
  double value = 0.0;      ///< exact at p = 2, certified lower bound otherwise
  VertexFunction witness;  ///< function realizing `value` (empty if degenerate)
  CertMethod method = CertMethod::kIterativeLowerBound;
  bool infinite = false;   ///< witness has D = 0 < N
  bool degenerate = false; ///< numerator vanishes identically
  int restarts = 0;        ///< ascent starts that were actually run
  int iterations = 0;      ///< total accepted ascent steps
  std::uint64_t seed = 0;
  double p = 2.0;
  double lambda = 0.0;     ///< window factor, recorded by the wrappers
};

namespace detail {

// Localized view of a ratio problem: variables are the vertices touched by
// either form; edge weights carry the half-edge membership multiplier.
struct RatioWork {
  std::vector<int> vars;   ///< local -> global vertex id
  std::vector<int> local;  ///< global -> local slot (-1 off the variable set)
  struct EEdge { int u, v; double w; };
  std::vector<EEdge> eedges;
  std::vector<std::pair<int, double>> num;  ///< (local, omega)
  std::vector<std::pair<int, double>> cen;  ///< (local, mu)
  std::vector<std::pair<int, double>> dw;   ///< (local, additive weight)
  double mu_c = 0.0;
  bool translation_invariant = false;  ///< recentring fixes both forms
};

inline RatioWork ratio_work(const WeightedGraph& g, const RatioProblem& pr) {
  RatioWork w;
  w.local.assign(g.n(), -1);
  auto touch = [&](int x) {
    if (w.local[x] < 0) {
      w.local[x] = static_cast<int>(w.vars.size());
      w.vars.push_back(x);
    }
  };
  auto in_denom = g.mask(pr.denom_set);
  for (const Edge& e : g.edges()) {
    double m = (in_denom[e.u] ? 0.5 : 0.0) + (in_denom[e.v] ? 0.5 : 0.0);
    if (m == 0.0) continue;
    touch(e.u);
    touch(e.v);
    w.eedges.push_back({w.local[e.u], w.local[e.v], e.w * m});
  }
  for (int x = 0; x < g.n(); ++x)
    if (pr.num_weight[x] > 0.0) {
      touch(x);
      w.num.push_back({w.local[x], pr.num_weight[x]});
    }
  for (int x : pr.center) {
    touch(x);
    w.cen.push_back({w.local[x], g.mu(x)});
    w.mu_c += g.mu(x);
  }
  if (!pr.denom_weight.empty())
    for (int x = 0; x < g.n(); ++x)
      if (pr.denom_weight[x] > 0.0) {
        touch(x);
        w.dw.push_back({w.local[x], pr.denom_weight[x]});
      }
  w.translation_invariant = w.dw.empty() && !w.cen.empty();
  return w;
}

struct RatioValue {
  double num = 0.0;
  double den = 0.0;
};

inline RatioValue ratio_eval(const RatioWork& w, const std::vector<double>& x, double p) {
  RatioValue v;
  double fc = 0.0;
  if (!w.cen.empty()) {
    double s = 0.0;
    for (const auto& [i, m] : w.cen) s += m * x[i];
    fc = s / w.mu_c;
  }
  for (const auto& [i, om] : w.num) v.num += om * pow_abs(x[i] - fc, p);
  for (const auto& e : w.eedges) v.den += e.w * pow_abs(x[e.u] - x[e.v], p);
  for (const auto& [i, d] : w.dw) v.den += d * pow_abs(x[i], p);
  return v;
}

inline void ratio_grad(const RatioWork& w, const std::vector<double>& x, double p,
                       std::vector<double>& gn, std::vector<double>& gd) {
  gn.assign(x.size(), 0.0);
  gd.assign(x.size(), 0.0);
  double fc = 0.0;
  if (!w.cen.empty()) {
    double s = 0.0;
    for (const auto& [i, m] : w.cen) s += m * x[i];
    fc = s / w.mu_c;
  }
  double s1 = 0.0;  // total numerator sensitivity, feeds the centering term
  for (const auto& [i, om] : w.num) {
    double d = p * om * dpow_abs(x[i] - fc, p);
    gn[i] += d;
    s1 += d;
  }
  if (!w.cen.empty())
    for (const auto& [i, m] : w.cen) gn[i] -= s1 * m / w.mu_c;
  for (const auto& e : w.eedges) {
    double d = p * e.w * dpow_abs(x[e.u] - x[e.v], p);
    gd[e.u] += d;
    gd[e.v] -= d;
  }
  for (const auto& [i, d] : w.dw) gd[i] += p * d * dpow_abs(x[i], p);
}

inline VertexFunction globalize(const WeightedGraph& g, const RatioWork& w,
                                const std::vector<double>& x) {
  VertexFunction f(g.n(), 0.0);
  for (std::size_t i = 0; i < w.vars.size(); ++i) f[w.vars[i]] = x[i];
  return f;
}

// Blow-up direction: the indicator of a connected component of the
// positive-weight denominator graph that avoids the additive weight has
// D = 0; after recentring it still moves the numerator unless the component
// carries either all of the centering mass together with the whole numerator
// support, or none of both.  Testing single components suffices: any
// denominator-null direction is constant on each component, and some single
// component already realizes a positive numerator when the combination does.
inline bool blowup_direction(const WeightedGraph& g, const RatioWork& w, double p,
                             VertexFunction& witness) {
  const int m = static_cast<int>(w.vars.size());
  std::vector<int> root(m);
  for (int i = 0; i < m; ++i) root[i] = i;
  auto find = [&](int a) {
    while (root[a] != a) {
      root[a] = root[root[a]];
      a = root[a];
    }
    return a;
  };
  for (const auto& e : w.eedges)
    if (e.w > 0.0) root[find(e.u)] = find(e.v);
  std::vector<char> grounded(m, 0), done(m, 0);
  for (const auto& [i, d] : w.dw) grounded[find(i)] = 1;
  for (int c0 = 0; c0 < m; ++c0) {
    int r = find(c0);
    if (grounded[r] || done[r]) continue;
    done[r] = 1;
    double alpha = 0.0;  // centering mass captured by the component
    if (!w.cen.empty()) {
      double s = 0.0;
      for (const auto& [i, mu] : w.cen)
        if (find(i) == r) s += mu;
      alpha = s / w.mu_c;
    }
    double moved = 0.0;
    for (const auto& [i, om] : w.num)
      moved += om * pow_abs((find(i) == r ? 1.0 : 0.0) - alpha, p);
    if (moved > 0.0) {
      witness.assign(g.n(), 0.0);
      for (int i = 0; i < m; ++i)
        if (find(i) == r) witness[w.vars[i]] = 1.0;
      return true;
    }
  }
  return false;
}

// p = 2 route: both forms are quadratic, N = f^T A f with
// A = diag(omega) - omega m^T - m omega^T + (sum omega) m m^T (m the
// centering functional) and D the window Laplacian plus the additive
// diagonal.  Whitening D on the complement of its kernel turns the pencil
// into an ordinary symmetric eigenproblem; numerator mass on ker(D) beyond
// roundoff certifies an infinite ratio.
inline RatioCertificate ratio_eigen(const WeightedGraph& g, const RatioWork& w,
                                    const RatioOptions& opts) {
  RatioCertificate cert;
  cert.method = CertMethod::kExactEigen;
  cert.p = 2.0;
  const int m = static_cast<int>(w.vars.size());
  if (m == 0) {
    cert.degenerate = true;
    return cert;
  }
  Eigen::VectorXd wv = Eigen::VectorXd::Zero(m), mv = Eigen::VectorXd::Zero(m);
  for (const auto& [i, om] : w.num) wv(i) += om;
  for (const auto& [i, mu] : w.cen) mv(i) = mu / w.mu_c;
  const double wsum = wv.sum();
  Eigen::MatrixXd a = wv.asDiagonal();
  a.noalias() -= wv * mv.transpose();
  a.noalias() -= mv * wv.transpose();
  a.noalias() += wsum * (mv * mv.transpose());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : w.eedges) {
    d(e.u, e.u) += e.w;
    d(e.v, e.v) += e.w;
    d(e.u, e.v) -= e.w;
    d(e.v, e.u) -= e.w;
  }
  for (const auto& [i, dv] : w.dw) d(i, i) += dv;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ed(d);
  const Eigen::VectorXd& dval = ed.eigenvalues();  // ascending
  const double cut = opts.kernel_tol * std::max(dval(m - 1), kTiny);
  int k = 0;
  while (k < m && dval(k) <= cut) ++k;
  const double ascale = std::max(a.trace(), kTiny);
  if (k > 0) {
    Eigen::MatrixXd kb = ed.eigenvectors().leftCols(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(kb.transpose() * a * kb);
    if (eb.eigenvalues()(k - 1) > 1e-10 * ascale) {
      Eigen::VectorXd v = kb * eb.eigenvectors().col(k - 1);
      cert.infinite = true;
      cert.value = std::numeric_limits<double>::infinity();
      cert.witness = globalize(g, w, std::vector<double>(v.data(), v.data() + m));
      return cert;
    }
  }
  const int q = m - k;
  if (q == 0) {
    cert.degenerate = true;  // D == 0 and the numerator carries no mass
    return cert;
  }
  Eigen::MatrixXd qp = ed.eigenvectors().rightCols(q);
  Eigen::VectorXd isq = dval.tail(q).array().sqrt().inverse().matrix();
  Eigen::MatrixXd pencil = isq.asDiagonal() * (qp.transpose() * a * qp) * isq.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(pencil);
  cert.value = std::max(0.0, em.eigenvalues()(q - 1));
  Eigen::VectorXd v = qp * (isq.asDiagonal() * em.eigenvectors().col(q - 1));
  const double vmax = v.cwiseAbs().maxCoeff();
  if (vmax > 0.0) v /= vmax;
  cert.witness = globalize(g, w, std::vector<double>(v.data(), v.data() + m));
  return cert;
}

// Ascent on log(N/D): direction grad N / N - grad D / D with backtracking on
// the exact ratio; iterates are renormalized (the ratio is 0-homogeneous) and
// recentered when both forms are translation invariant.  Returns the exact
// ratio at the final iterate, or -1 when the start is denominator-dead.
inline double ratio_ascent(const RatioWork& w, double p, const RatioOptions& opts,
                           std::vector<double>& x, int& iterations) {
  auto project = [&](std::vector<double>& y) {
    if (w.translation_invariant) {
      double s = 0.0;
      for (const auto& [i, mu] : w.cen) s += mu * y[i];
      const double fc = s / w.mu_c;
      for (double& t : y) t -= fc;
    }
    double n2 = 0.0;
    for (double t : y) n2 += t * t;
    if (n2 > 0.0) {
      const double inv = 1.0 / std::sqrt(n2);
      for (double& t : y) t *= inv;
    }
  };
  project(x);
  RatioValue ev = ratio_eval(w, x, p);
  if (!(ev.den > 0.0)) return -1.0;
  double r = ev.num / ev.den;
  std::vector<double> gn, gd, dir(x.size()), cand;
  int stall = 0;
  for (int it = 0; it < opts.max_iters; ++it) {
    ratio_grad(w, x, p, gn, gd);
    double dn2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dir[i] = gn[i] / std::max(ev.num, kTiny) - gd[i] / std::max(ev.den, kTiny);
      dn2 += dir[i] * dir[i];
    }
    if (!(dn2 > 1e-280)) break;
    double step = 0.5 / std::sqrt(dn2);
    bool moved = false;
    for (int bt = 0; bt < 48 && !moved; ++bt, step *= 0.5) {
      cand = x;
      for (std::size_t i = 0; i < x.size(); ++i) cand[i] += step * dir[i];
      project(cand);
      RatioValue e2 = ratio_eval(w, cand, p);
      if (!(e2.den > 0.0)) continue;
      const double r2 = e2.num / e2.den;
      if (r2 > r) {
        stall = (r2 - r) < opts.tol * std::max(r2, kTiny) ? stall + 1 : 0;
        x.swap(cand);
        r = r2;
        ev = e2;
        moved = true;
        ++iterations;
      }
    }
    if (!moved || stall >= 4) break;
  }
  return r;
}

inline void validate_ratio_problem(const WeightedGraph& g, const RatioProblem& pr,
                                   double p) {
  require(p > 1.0, "p > 1", "p = " + std::to_string(p));
  require(static_cast<int>(pr.num_weight.size()) == g.n(),
          "numerator weight on every vertex", "size " + std::to_string(pr.num_weight.size()));
  double lo = 0.0;
  for (double t : pr.num_weight) lo = std::min(lo, t);
  require(lo >= 0.0, "numerator weight nonnegative", "min " + std::to_string(lo));
  if (!pr.denom_weight.empty()) {
    require(static_cast<int>(pr.denom_weight.size()) == g.n(),
            "denominator weight on every vertex",
            "size " + std::to_string(pr.denom_weight.size()));
    double dlo = 0.0;
    for (double t : pr.denom_weight) dlo = std::min(dlo, t);
    require(dlo >= 0.0, "denominator weight nonnegative", "min " + std::to_string(dlo));
  }
  auto in_range = [&](const std::vector<int>& v) {
    for (int x : v)
      if (x < 0 || x >= g.n()) return false;
    return true;
  };
  require(in_range(pr.center) && in_range(pr.denom_set), "vertex sets in range",
          "ratio problem");
}

}  // namespace detail

// Supremum of the ratio problem.  Exact (eigen pencil) at p = 2, certified
// lower bound (multi-start ascent) otherwise; infinite and degenerate cases
// are detected combinatorially first.
inline RatioCertificate ratio_sup(const WeightedGraph& g, const RatioProblem& pr, double p,
                                  const RatioOptions& opts = {}) {
  detail::validate_ratio_problem(g, pr, p);
  require(opts.route != RatioOptions::Route::kEigen || p == 2.0,
          "eigen route requires p = 2", "p = " + std::to_string(p));
  RatioCertificate cert;
  cert.p = p;
  cert.seed = opts.seed;
  const bool eigen_route = opts.route == RatioOptions::Route::kEigen ||
                           (opts.route == RatioOptions::Route::kAuto && p == 2.0);
  cert.method = eigen_route ? CertMethod::kExactEigen : CertMethod::kIterativeLowerBound;
  double wsum = 0.0;
  for (double t : pr.num_weight) wsum += t;
  if (wsum == 0.0) {
    cert.degenerate = true;
    return cert;
  }
  if (pr.center.size() == 1) {
    bool only_center = true;
    for (int x = 0; x < g.n(); ++x)
      if (pr.num_weight[x] > 0.0 && x != pr.center[0]) {
        only_center = false;
        break;
      }
    if (only_center) {
      cert.degenerate = true;  // |f - f_C| vanishes on the whole support
      return cert;
    }
  }
  auto w = detail::ratio_work(g, pr);
  VertexFunction dirn;
  if (detail::blowup_direction(g, w, p, dirn)) {
    cert.infinite = true;
    cert.value = std::numeric_limits<double>::infinity();
    cert.witness = std::move(dirn);
    return cert;
  }
  if (eigen_route) {
    RatioCertificate c = detail::ratio_eigen(g, w, opts);
    c.p = p;
    c.seed = opts.seed;
    return c;
  }
  std::vector<VertexFunction> starts;
  for (const auto& s : opts.starts)
    if (static_cast<int>(s.size()) == g.n()) starts.push_back(s);
  {
    // The carriers of both forms do not depend on p, so the p = 2 optimum is
    // a structured start for every p.
    RatioCertificate c2 = detail::ratio_eigen(g, w, opts);
    if (!c2.infinite && !c2.witness.empty()) starts.push_back(std::move(c2.witness));
  }
  Rng rng(opts.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const int m = static_cast<int>(w.vars.size());
  double best = 0.0;
  std::vector<double> xbest;
  auto run = [&](std::vector<double> x) {
    const double r = detail::ratio_ascent(w, p, opts, x, cert.iterations);
    if (r < 0.0) return;
    ++cert.restarts;
    if (r > best || xbest.empty()) {
      best = r;
      xbest = std::move(x);
    }
  };
  for (const auto& s : starts) {
    std::vector<double> x(m);
    for (int i = 0; i < m; ++i) x[i] = s[w.vars[i]];
    run(std::move(x));
  }
  for (int t = 0; t < opts.restarts; ++t) {
    std::vector<double> x(m);
    for (int i = 0; i < m; ++i) x[i] = nd(rng);
    run(std::move(x));
  }
  cert.value = best;
  if (!xbest.empty()) cert.witness = detail::globalize(g, w, xbest);
  return cert;
}

// Exhaustive certification over the value grid {-1, -1/2, 0, 1/2, 1} on tiny
// instances; the grid supremum is itself a certified lower bound and an upper
// envelope for indicator-shaped optimizers.
inline RatioCertificate brute_force_ratio(const WeightedGraph& g, const RatioProblem& pr,
                                          double p) {
  require(g.n() <= 5, "brute force limited to five vertices", "n = " + std::to_string(g.n()));
  detail::validate_ratio_problem(g, pr, p);
  RatioCertificate cert;
  cert.method = CertMethod::kBruteForce;
  cert.p = p;
  auto w = detail::ratio_work(g, pr);
  if (w.num.empty()) {
    cert.degenerate = true;
    return cert;
  }
  static constexpr double kGrid[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const int m = static_cast<int>(w.vars.size());
  long total = 1;
  for (int i = 0; i < m; ++i) total *= 5;
  std::vector<double> x(m, 0.0), xbest;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < m; ++i) {
      x[i] = kGrid[c % 5];
      c /= 5;
    }
    const detail::RatioValue ev = detail::ratio_eval(w, x, p);
    if (ev.den == 0.0) {
      if (ev.num > 0.0) {
        cert.infinite = true;
        cert.value = std::numeric_limits<double>::infinity();
        cert.witness = detail::globalize(g, w, x);
        return cert;
      }
      continue;
    }
    const double r = ev.num / ev.den;
    if (r > cert.value || xbest.empty()) {
      cert.value = r;
      xbest = x;
    }
  }
  if (!xbest.empty()) cert.witness = detail::globalize(g, w, xbest);
  return cert;
}

// --- the certified constants ----------------------------------------------

namespace detail {

// Structured ascent starts attached to a ball: the distance profile from the
// center and a tent supported near B.
inline std::vector<VertexFunction> ball_starts(const WeightedGraph& g, const Ball& b) {
  VertexFunction dist(g.n()), tent(g.n());
  for (int x = 0; x < g.n(); ++x) {
    const double d = g.dist(b.center, x);
    dist[x] = std::isfinite(d) ? d : 0.0;
    tent[x] = std::isfinite(d) ? std::max(0.0, 2.0 * b.radius - d) : 0.0;
  }
  return {std::move(dist), std::move(tent)};
}

// Contract check for a cutoff attached to B; returns the members of 2B.
inline std::vector<int> check_cutoff(const WeightedGraph& g, const Ball& b,
                                     const CutoffFunction& cutoff) {
  require(static_cast<int>(cutoff.values.size()) == g.n(), "cutoff on every vertex",
          "size " + std::to_string(cutoff.values.size()));
  auto big = g.ball_members({b.center, 2.0 * b.radius});
  auto in_big = g.mask(big);
  for (int x : g.ball_members(b))
    require(std::abs(cutoff.values[x] - 1.0) <= 1e-9, "cutoff equals 1 on B",
            "value " + std::to_string(cutoff.values[x]));
  for (int x = 0; x < g.n(); ++x) {
    require(cutoff.values[x] >= -1e-12 && cutoff.values[x] <= 1.0 + 1e-12,
            "cutoff within [0,1]", "value " + std::to_string(cutoff.values[x]));
    if (!in_big[x])
      require(std::abs(cutoff.values[x]) <= 1e-12, "cutoff vanishes off 2B",
              "value " + std::to_string(cutoff.values[x]));
  }
  return big;
}

}  // namespace detail

struct CapacityResult {
  double value = 0.0;     ///< cap_p(B, 2B) Psi(B) / mu(B)
  double capacity = 0.0;  ///< Gamma_p<psi_B>(X)
  CutoffFunction cutoff;
};

// Normalized capacity of the condenser (B, 2B); degenerate covers (2B = X)
// certify zero.
inline CapacityResult capacity_constant(const WeightedGraph& g, const Ball& b, double p,
                                        const ScaleFunction& psi,
                                        const SolverOptions& opts = {}) {
  require(b.radius > 0.0, "ball radius positive", "r = " + std::to_string(b.radius));
  CapacityResult out;
  out.cutoff = capacity_minimizer(g, b, p, opts);
  out.capacity = out.cutoff.capacity;
  out.value = out.capacity * psi.of_ball(b) / g.mu_of_ball(b);
  return out;
}

// sup_f [mu(B)/Psi(B)] avg_B |f - f_B|^p / Gamma_p<f>(Lambda B) as a ratio
// problem: weight mu/Psi(B) on B, centering over B, window Lambda B.
inline RatioProblem poincare_problem(const WeightedGraph& g, const Ball& b, double lambda,
                                     const ScaleFunction& psi) {
  require(b.radius > 0.0, "ball radius positive", "r = " + std::to_string(b.radius));
  require(lambda >= 1.0, "Lambda >= 1", "Lambda = " + std::to_string(lambda));
  RatioProblem pr;
  pr.num_weight.assign(g.n(), 0.0);
  const double scale = psi.of_ball(b);
  pr.center = g.ball_members(b);
  for (int x : pr.center) pr.num_weight[x] = g.mu(x) / scale;
  pr.denom_set = g.ball_members({b.center, lambda * b.radius});
  return pr;
}

inline RatioCertificate poincare_constant(const WeightedGraph& g, const Ball& b, double p,
                                          double lambda, const ScaleFunction& psi,
                                          RatioOptions opts = {}) {
  for (auto& s : detail::ball_starts(g, b)) opts.starts.push_back(std::move(s));
  RatioCertificate cert = ratio_sup(g, poincare_problem(g, b, lambda, psi), p, opts);
  cert.lambda = lambda;
  return cert;
}

// sup_f int_{2B} |f - f_B|^p dGamma_p<psi_B> / Gamma_p<f>(Lambda B): the
// energy measure of the cutoff restricted to 2B is the numerator weight.
inline RatioProblem cs_problem(const WeightedGraph& g, const Ball& b,
                               const CutoffFunction& cutoff, double p, double lambda) {
  require(b.radius > 0.0, "ball radius positive", "r = " + std::to_string(b.radius));
  require(lambda >= 1.0, "Lambda >= 1", "Lambda = " + std::to_string(lambda));
  auto big = detail::check_cutoff(g, b, cutoff);
  const EnergyMeasure gamma = energy_measure(g, cutoff.values, p);
  RatioProblem pr;
  pr.num_weight.assign(g.n(), 0.0);
  for (int x : big) pr.num_weight[x] = gamma.mass[x];
  pr.center = g.ball_members(b);
  pr.denom_set = g.ball_members({b.center, lambda * b.radius});
  return pr;
}

inline RatioCertificate cs_constant(const WeightedGraph& g, const Ball& b,
                                    const CutoffFunction& cutoff, double p, double lambda,
                                    RatioOptions opts = {}) {
  for (auto& s : detail::ball_starts(g, b)) opts.starts.push_back(std::move(s));
  RatioCertificate cert = ratio_sup(g, cs_problem(g, b, cutoff, p, lambda), p, opts);
  cert.lambda = lambda;
  return cert;
}

// Classical form: numerator int_{2B} |f|^p dGamma_p<psi_B> with no centering,
// denominator Gamma_p<f>(Lambda B) + (1/Psi(B)) int_{2B} |f|^p dmu.
inline RatioProblem cs_classical_problem(const WeightedGraph& g, const Ball& b,
                                         const CutoffFunction& cutoff, double p,
                                         double lambda, const ScaleFunction& psi) {
  require(b.radius > 0.0, "ball radius positive", "r = " + std::to_string(b.radius));
  require(lambda >= 1.0, "Lambda >= 1", "Lambda = " + std::to_string(lambda));
  auto big = detail::check_cutoff(g, b, cutoff);
  const EnergyMeasure gamma = energy_measure(g, cutoff.values, p);
  RatioProblem pr;
  pr.num_weight.assign(g.n(), 0.0);
  pr.denom_weight.assign(g.n(), 0.0);
  const double scale = psi.of_ball(b);
  for (int x : big) {
    pr.num_weight[x] = gamma.mass[x];
    pr.denom_weight[x] = g.mu(x) / scale;
  }
  pr.denom_set = g.ball_members({b.center, lambda * b.radius});
  return pr;
}

inline RatioCertificate cs_classical_constant(const WeightedGraph& g, const Ball& b,
                                              const CutoffFunction& cutoff, double p,
                                              double lambda, const ScaleFunction& psi,
                                              RatioOptions opts = {}) {
  for (auto& s : detail::ball_starts(g, b)) opts.starts.push_back(std::move(s));
  RatioCertificate cert =
      ratio_sup(g, cs_classical_problem(g, b, cutoff, p, lambda, psi), p, opts);
  cert.lambda = lambda;
  return cert;
}

// --- equivalence of the two cutoff-Sobolev forms --------------------------

struct EquivalenceReport {
  CapacityResult cap;
  RatioCertificate cs;            ///< centered form at window Lambda
  RatioCertificate cs_wide;       ///< centered form at window 2 Lambda
  RatioCertificate classical;     ///< classical form at window Lambda
  RatioCertificate pi_double;     ///< Poincare constant of 2B at window Lambda
  double implied_cs = 0.0;        ///< classical+capacity+Poincare assembly
  double cs_slack = 0.0;          ///< measured cs_wide <= implied_cs
  double implied_classical = 0.0; ///< 2^{p-1} max(cs, cap)
  double classical_slack = 0.0;   ///< measured classical <= implied_classical
  bool pass = false;
  double p = 2.0;
  double lambda = 0.0;
};

// Both comparison directions with the constants assembled exactly as the two
// proofs produce them.  Classical => centered (at the doubled window): insert
// f - f_B, split the mu-term by the mean swap |f - f_B|^p <= 2^{p-1}
// (1 + mu(2B)/mu(B)) |f - f_{2B}|^p averaged, then apply the Poincare
// inequality of 2B, giving
//   C_CS(2 Lambda) <= C_cl [1 + 2^{p-1}(1 + mu(2B)/mu(B))
//                               (Psi(2B)/Psi(B)) C_PI(2B, Lambda)].
// Centered => classical (same window): |f|^p <= 2^{p-1}(|f - f_B|^p +
// |f_B|^p), Jensen on |f_B|^p and Gamma<psi_B>(2B) <= cap give
//   C_cl <= 2^{p-1} max(C_CS, C_cap).
// At p = 2 every measured side is an exact supremum and both inequalities are
// theorems; at p != 2 the measured sides are certified lower bounds and the
// comparison is an empirical report.
inline EquivalenceReport cs_equivalence_check(const WeightedGraph& g, const Ball& b,
                                              double p, double lambda,
                                              const ScaleFunction& psi,
                                              const SolverOptions& sopts = {},
                                              const RatioOptions& ropts = {},
                                              double tol = 1e-9) {
  require(lambda >= 1.0, "Lambda >= 1", "Lambda = " + std::to_string(lambda));
  EquivalenceReport rep;
  rep.p = p;
  rep.lambda = lambda;
  const Ball b2{b.center, 2.0 * b.radius};
  rep.cap = capacity_constant(g, b, p, psi, sopts);
  rep.cs = cs_constant(g, b, rep.cap.cutoff, p, lambda, ropts);
  rep.cs_wide = cs_constant(g, b, rep.cap.cutoff, p, 2.0 * lambda, ropts);
  rep.classical = cs_classical_constant(g, b, rep.cap.cutoff, p, lambda, psi, ropts);
  rep.pi_double = poincare_constant(g, b2, p, lambda, psi, ropts);
  const double mean_swap = std::pow(2.0, p - 1.0) * (1.0 + g.mu_of_ball(b2) / g.mu_of_ball(b));
  const double psi_ratio = psi.of_ball(b2) / psi.of_ball(b);
  rep.implied_cs = rep.classical.value * (1.0 + mean_swap * psi_ratio * rep.pi_double.value);
  rep.implied_classical = std::pow(2.0, p - 1.0) * std::max(rep.cs.value, rep.cap.value);
  rep.cs_slack = le_slack(rep.cs_wide.value, rep.implied_cs);
  rep.classical_slack = le_slack(rep.classical.value, rep.implied_classical);
  const bool finite = !rep.cs.infinite && !rep.cs_wide.infinite && !rep.classical.infinite &&
                      !rep.pi_double.infinite;
  rep.pass = finite && rep.cs_slack >= -tol && rep.classical_slack >= -tol;
  return rep;
}

// --- level-set truncation audit -------------------------------------------

struct MazyaLevel {
  double lambda = 0.0;     ///< dyadic threshold 2^i
  std::vector<int> lower;  ///< A_lambda = {|g| > lambda}
  std::vector<int> upper;  ///< A_{2 lambda} = {|g| > 2 lambda}
  LogCaccioppoliResult log_cacc;  ///< Gamma<psi>(A_{2 lambda}) vs Gamma<T_lambda g>
  double active_rhs = 0.0;    ///< lambda^{-p} Gamma_p<|g|> over transition edges
  double active_slack = 0.0;  ///< log_cacc.rhs <= active_rhs
  bool vacuous = false;       ///< A_{2 lambda} empty
  bool pass = false;
};

struct MazyaAudit {
  std::vector<MazyaLevel> levels;
  double lhs_total = 0.0;       ///< int |g|^p dGamma_p<psi>
  double rhs_total = 0.0;       ///< 2^{p+1} Gamma_p<g>(X)
  double total_slack = 0.0;
  double level_majorant = 0.0;  ///< sum_i 2^{(i+1)p} Gamma<psi>(A_{2^i})
  bool pass = false;
  double p = 2.0;
};

// Truncation audit for 0 <= psi <= 1 superharmonic in Omega (caller-certified)
// and g vanishing off Omega.  Each dyadic level lambda = 2^i truncates
// T_lambda g = max(min(|g|, 2 lambda) - lambda, 0) / lambda, which equals 1 on
// A_{2 lambda} and 0 off A_lambda exactly (the division by a power of two is
// exact), and feeds the comparison Gamma<psi>(A_{2 lambda}) <=
// Gamma<T_lambda g>(Omega) together with the per-edge Lipschitz majorant
// lambda^{-p} Gamma<|g|>(transition edges).  Summing the dyadic shells of |g|
// against the level bounds yields the asserted aggregate
//   int |g|^p dGamma<psi>  <=  2^{p+1} Gamma_p<g>(X),
// checked on the measured quantities.
inline MazyaAudit mazya_truncation_audit(const WeightedGraph& g, const VertexFunction& psi,
                                         const VertexFunction& gf,
                                         const std::vector<int>& omega, double p,
                                         double tol = 1e-9) {
  require(static_cast<int>(psi.size()) == g.n() && static_cast<int>(gf.size()) == g.n(),
          "functions on every vertex",
          "sizes " + std::to_string(psi.size()) + ", " + std::to_string(gf.size()));
  auto in_om = g.mask(omega);
  for (int x = 0; x < g.n(); ++x) {
    require(psi[x] >= -1e-12 && psi[x] <= 1.0 + 1e-12, "0 <= psi <= 1",
            "psi[" + std::to_string(x) + "] = " + std::to_string(psi[x]));
    if (!in_om[x])
      require(gf[x] == 0.0, "g vanishes off Omega",
              "g[" + std::to_string(x) + "] = " + std::to_string(gf[x]));
  }
  MazyaAudit audit;
  audit.p = p;
  const EnergyMeasure gpsi = energy_measure(g, psi, p);
  VertexFunction absg(g.n());
  double gmax = 0.0, gmin_pos = std::numeric_limits<double>::infinity();
  for (int x = 0; x < g.n(); ++x) {
    absg[x] = std::abs(gf[x]);
    if (absg[x] > 0.0) {
      gmax = std::max(gmax, absg[x]);
      gmin_pos = std::min(gmin_pos, absg[x]);
    }
  }
  for (int x = 0; x < g.n(); ++x) audit.lhs_total += pow_abs(gf[x], p) * gpsi.mass[x];
  audit.rhs_total = std::pow(2.0, p + 1.0) * total_energy(g, gf, p);
  audit.total_slack = le_slack(audit.lhs_total, audit.rhs_total);
  if (gmax == 0.0) {
    audit.pass = audit.total_slack >= -tol;  // vacuous: no levels
    return audit;
  }
  auto floor_level = [](double t) {  // largest i with 2^i < t, for t > 0
    int e;
    const double m = std::frexp(t, &e);  // t = m 2^e, m in [0.5, 1)
    return m == 0.5 ? e - 2 : e - 1;
  };
  const int i_hi = floor_level(gmax);
  int i_lo = floor_level(gmin_pos);
  if (i_hi - i_lo > 255) i_lo = i_hi - 255;  // cap pathological dynamic range
  bool all_pass = true;
  VertexFunction trunc(g.n());
  for (int i = i_lo; i <= i_hi; ++i) {
    MazyaLevel lv;
    const double lam = std::ldexp(1.0, i);
    lv.lambda = lam;
    const double two_lam = 2.0 * lam;
    for (int x = 0; x < g.n(); ++x) {
      if (absg[x] > lam) lv.lower.push_back(x);
      if (absg[x] > two_lam) lv.upper.push_back(x);
    }
    lv.vacuous = lv.upper.empty();
    for (int x = 0; x < g.n(); ++x)
      trunc[x] = std::max(std::min(absg[x], two_lam) - lam, 0.0) / lam;
    lv.log_cacc = log_caccioppoli_check(g, psi, trunc, lv.upper, omega, p, tol);
    double active = 0.0;
    for (const Edge& e : g.edges())
      if (trunc[e.u] != trunc[e.v]) active += e.w * pow_abs(absg[e.u] - absg[e.v], p);
    lv.active_rhs = active / std::pow(lam, p);
    lv.active_slack = le_slack(lv.log_cacc.rhs, lv.active_rhs);
    lv.pass = lv.log_cacc.pass && lv.active_slack >= -tol;
    all_pass = all_pass && lv.pass;
    audit.level_majorant += std::pow(two_lam, p) * gpsi.of(lv.lower);
    audit.levels.push_back(std::move(lv));
  }
  audit.pass = all_pass && audit.total_slack >= -tol;
  return audit;
}

// --- the constructive pipeline --------------------------------------------

struct PipelineReport {
  Ball ball;
  double p = 2.0, eta = 0.0, lambda = 0.0;
  bool degenerate = false;  ///< 2B covered X
  bool trivial = false;     ///< Gamma_p<f>(Lambda B) == 0
  CutoffFunction cutoff;       ///< psi_B
  CutoffFunction cutoff_wide;  ///< psi_{2 Lambda B}
  double f_mean = 0.0;         ///< mu-average of f over 2B
  VertexFunction ftilde;       ///< f - f_mean psi_{2 Lambda B}
  BlendResult h2;  ///< inner piece: ftilde on (1+eta)B, 0 past ~2B
  BlendResult h1;  ///< outer piece: 0 on B, ftilde off (1+eta)B
  double pointwise_min = 0.0;  ///< min_x |h1|^p + |h2|^p - |ftilde|^p (exact >= 0)
  SuperharmonicReport sh_inner, sh_outer;  ///< psi_B resp. 1 - psi_B on the audit regions
  MazyaAudit audit_inner;  ///< psi_B against h2
  MazyaAudit audit_outer;  ///< 1 - psi_B against h1
  RatioCertificate pi_cert;  ///< Poincare constant of 2B at window Lambda
  double lhs = 0.0;       ///< int_{2B} |ftilde - ftilde_B|^p dGamma<psi_B>
  double denom = 0.0;     ///< Gamma_p<f>(Lambda B)
  double ratio = 0.0;     ///< lhs / denom
  double e1 = 0.0, e2 = 0.0;   ///< Gamma_p<h_i>(X) / denom
  double g_factor = 0.0;       ///< Gamma_p<ftilde>(2 Lambda B) / denom
  double rho = 0.0;            ///< realized Poincare ratio of ftilde on 2B
  double c_pi_used = 0.0;      ///< max(pi_cert.value, rho)
  double c_cap = 0.0;
  double psi_ratio = 0.0;      ///< Psi(2B)/Psi(B)
  double c_assembled = 0.0;
  double slack = 0.0;          ///< ratio <= c_assembled
  bool pass = false;
};

// Assembles a cutoff-Sobolev bound for the given f from measured pieces:
// subtract the 2B-mean through the wide cutoff, split ftilde = h1 + h2 by two
// Whitney blends whose assigned regions make |ftilde|^p <= |h1|^p + |h2|^p
// pointwise exact, push each piece through the truncation audit (psi_B
// against the inner piece on its support region, 1 - psi_B against the outer
// piece off B), and close with capacity and Poincare:
//   C = 2^{p-1} [ 2^{p+1}(E1 + E2) + C_cap max(C_PI, rho) Psi(2B)/Psi(B) G ]
// where E_i, G normalize by Gamma_p<f>(Lambda B) and rho is the realized
// Poincare ratio of ftilde itself (so the chain stays valid when the p != 2
// Poincare certificate is only a lower bound).  Errors are rethrown naming
// the failing stage.
inline PipelineReport constructive_cs_pipeline(const WeightedGraph& g, const Ball& b,
                                               const VertexFunction& f, double p,
                                               double eta, double lambda,
                                               const ScaleFunction& psi_scale,
                                               const SolverOptions& sopts = {},
                                               const RatioOptions& ropts = {},
                                               double tol = 1e-9) {
  require(b.radius > 0.0, "ball radius positive", "r = " + std::to_string(b.radius));
  require(eta > 0.0 && eta < 1.0, "eta in (0,1)", "eta = " + std::to_string(eta));
  require(lambda >= 2.0, "Lambda >= 2", "Lambda = " + std::to_string(lambda));
  require(static_cast<int>(f.size()) == g.n(), "f on every vertex",
          "size " + std::to_string(f.size()));

  auto stage = [](const char* name, auto&& fn) {
    try {
      return fn();
    } catch (const Error& err) {
      throw Error(std::string("pipeline stage [") + name + "]: " + err.what());
    }
  };

  PipelineReport rep;
  rep.ball = b;
  rep.p = p;
  rep.eta = eta;
  rep.lambda = lambda;

  const auto two_b = g.ball_members({b.center, 2.0 * b.radius});
  rep.degenerate = g.complement(two_b).empty();

  stage("cutoff", [&] { rep.cutoff = capacity_minimizer(g, b, p, sopts); });
  stage("wide cutoff", [&] {
    rep.cutoff_wide = capacity_minimizer(g, {b.center, 2.0 * lambda * b.radius}, p, sopts);
  });

  rep.f_mean = g.average(f, two_b);
  rep.ftilde.resize(g.n());
  for (int x = 0; x < g.n(); ++x)
    rep.ftilde[x] = f[x] - rep.f_mean * rep.cutoff_wide.values[x];

  const VertexFunction zero(g.n(), 0.0);
  const double r1 = (1.0 + eta) * b.radius;
  const double eta2 = (1.0 - eta) / (1.0 + eta);  // (1+eta2)(1+eta) == 2
  const double lambda_wb = 8.0;
  stage("inner blend", [&] {
    rep.h2 = whitney_blend(g, rep.ftilde, zero, {b.center, r1}, eta2, p, lambda_wb, sopts);
  });
  stage("outer blend", [&] {
    rep.h1 = whitney_blend(g, zero, rep.ftilde, b, eta, p, lambda_wb, sopts);
  });

  // Every vertex carries ftilde bitwise in at least one piece (h2 on the
  // closed inflated ball, h1 outside it), so each term below is exact >= 0.
  rep.pointwise_min = std::numeric_limits<double>::infinity();
  for (int x = 0; x < g.n(); ++x)
    rep.pointwise_min =
        std::min(rep.pointwise_min, pow_abs(rep.h1.h[x], p) + pow_abs(rep.h2.h[x], p) -
                                        pow_abs(rep.ftilde[x], p));

  // Audit regions: h2 is assigned-zero off its blend support, h1 off the
  // closed ball complement.  psi_B is at its maximum on B and p-harmonic in
  // the annulus; 1 - psi_B is at its maximum off 2B and p-harmonic in the
  // annulus.  The variational superharmonicity reports record how far the
  // regions stray from that (support leakage past 2B can occur at edge scale).
  std::vector<int> omega_inner;
  {
    std::vector<char> m(g.n(), 0);
    for (int x : g.ball_members({b.center, (1.0 + eta2) * r1})) m[x] = 1;
    for (int x : g.ball_closure({b.center, r1})) m[x] = 1;
    for (int x = 0; x < g.n(); ++x)
      if (m[x]) omega_inner.push_back(x);
  }
  const auto omega_outer = g.complement(g.ball_closure(b));
  VertexFunction one_minus(g.n());
  for (int x = 0; x < g.n(); ++x) one_minus[x] = 1.0 - rep.cutoff.values[x];
  stage("superharmonicity", [&] {
    rep.sh_inner = check_superharmonic(g, rep.cutoff.values, omega_inner, p, 24, 0x5ca1ab1e);
    if (!omega_outer.empty())
      rep.sh_outer = check_superharmonic(g, one_minus, omega_outer, p, 24, 0xdecaf);
  });

  stage("inner truncation audit", [&] {
    rep.audit_inner = mazya_truncation_audit(g, rep.cutoff.values, rep.h2.h, omega_inner, p, tol);
  });
  stage("outer truncation audit", [&] {
    rep.audit_outer = mazya_truncation_audit(g, one_minus, rep.h1.h, omega_outer, p, tol);
  });

  const Ball b2{b.center, 2.0 * b.radius};
  stage("poincare", [&] {
    rep.pi_cert = poincare_constant(g, b2, p, lambda, psi_scale, ropts);
  });

  const EnergyMeasure gf = energy_measure(g, f, p);
  const EnergyMeasure gpsi = energy_measure(g, rep.cutoff.values, p);
  const EnergyMeasure gft = energy_measure(g, rep.ftilde, p);
  rep.denom = gf.of(g.ball_members({b.center, lambda * b.radius}));
  const double ft_b = g.average(rep.ftilde, g.ball_members(b));
  rep.lhs = p_integral(two_b, rep.ftilde, ft_b, p, gpsi.mass);

  const double psi_b = psi_scale.of_ball(b);
  const double psi_2b = psi_scale.of_ball(b2);
  rep.psi_ratio = psi_2b / psi_b;
  rep.c_cap = rep.cutoff.capacity * psi_b / g.mu_of_ball(b);
  const double gft_wide = gft.of(g.ball_members({b.center, 2.0 * lambda * b.radius}));
  const double avg_ft = p_integral(two_b, rep.ftilde, 0.0, p, g.mu()) / g.mu_of(two_b);
  rep.rho = gft_wide > 0.0 ? (g.mu_of(two_b) / psi_2b) * avg_ft / gft_wide : 0.0;
  rep.c_pi_used = std::max(rep.pi_cert.value, rep.rho);

  if (rep.denom > 0.0) {
    rep.e1 = total_energy(g, rep.h1.h, p) / rep.denom;
    rep.e2 = total_energy(g, rep.h2.h, p) / rep.denom;
    rep.g_factor = gft_wide / rep.denom;
    rep.c_assembled =
        std::pow(2.0, p - 1.0) * (std::pow(2.0, p + 1.0) * (rep.e1 + rep.e2) +
                                  rep.c_cap * rep.c_pi_used * rep.psi_ratio * rep.g_factor);
    rep.ratio = rep.lhs / rep.denom;
    rep.slack = le_slack(rep.ratio, rep.c_assembled);
    rep.pass = rep.audit_inner.pass && rep.audit_outer.pass && rep.pointwise_min >= 0.0 &&
               rep.slack >= -tol;
  } else {
    // f constant on the window: the claim degenerates to lhs == 0 and the
    // check is that ftilde is constant on 2B up to roundoff of the mean.
    rep.trivial = true;
    double osc = 0.0, scale = 1.0;
    for (int x : two_b) {
      osc = std::max(osc, std::abs(rep.ftilde[x] - ft_b));
      scale = std::max(scale, std::abs(f[x]));
    }
    rep.pass = rep.audit_inner.pass && rep.audit_outer.pass && rep.pointwise_min >= 0.0 &&
               osc <= 1e-10 * scale;
  }
  return rep;
}

// --- pair capacity lower constant -----------------------------------------

struct BallCapacityResult {
  Ball bx, by;              ///< the plates B(x, r/A) and B(y, r/A)
  double separation = 0.0;  ///< r = d(x, y)
  double energy = 0.0;      ///< condenser p-energy
  double value = 0.0;       ///< energy * Psi(x, r) / mu(B(x, r))
  VertexFunction u;
  SolveCertificate cert;
};

// Capacity-type lower constant across a vertex pair: the condenser with
// plates B(x, r/A) at 1 and B(y, r/A) at 0, normalized at scale r.  For
// A >= 3 the plates cannot meet (triangle inequality), which the contract
// still checks.
inline BallCapacityResult ball_capacity_lower(const WeightedGraph& g, int x, int y,
                                              double a, double p, const ScaleFunction& psi,
                                              const SolverOptions& opts = {}) {
  require(x != y, "distinct endpoints",
          "x = " + std::to_string(x) + ", y = " + std::to_string(y));
  require(a >= 3.0, "A >= 3", "A = " + std::to_string(a));
  const double r = g.dist(x, y);
  require(std::isfinite(r) && r > 0.0, "endpoints connected", "d = " + std::to_string(r));
  BallCapacityResult out;
  out.separation = r;
  out.bx = {x, r / a};
  out.by = {y, r / a};
  const auto px = g.ball_members(out.bx);
  const auto py = g.ball_members(out.by);
  const auto mx = g.mask(px);
  for (int v : py)
    require(!mx[v], "plates disjoint", "vertex " + std::to_string(v));
  std::vector<int> ids = px;
  std::vector<double> vals(px.size(), 1.0);
  for (int v : py) {
    ids.push_back(v);
    vals.push_back(0.0);
  }
  PHarmonicResult res = p_harmonic(g, ids, vals, p, opts);
  out.u = std::move(res.u);
  out.cert = res.cert;
  out.energy = res.cert.energy;
  out.value = out.energy * psi(x, r) / g.mu_of_ball({x, r});
  return out;
}

// --- reports ---------------------------------------------------------------

struct CertBallRecord {
  Ball ball;
  CapacityResult cap;
  RatioCertificate pi;
  RatioCertificate cs;
  RatioCertificate cs_classical;
  double c_wb = std::numeric_limits<double>::quiet_NaN();  ///< blend constant, when measured
  bool has_blend = false;
};

struct CertSummary {
  int balls = 0;
  int infinite = 0;  ///< certificates with a blow-up witness
  double c_d = 0.0;
  double cap_min = 0.0, cap_max = 0.0;
  double pi_min = 0.0, pi_max = 0.0;
  double cs_min = 0.0, cs_max = 0.0;
  double classical_min = 0.0, classical_max = 0.0;
  double wb_max = 0.0;
};

struct CertReport {
  std::string family = "custom";
  int level = 0;
  double p = 2.0;
  double beta = 2.0;  ///< power-scale exponent (when the scale is a power law)
  double lambda_pi = 8.0;
  double lambda_whitney = 8.0;
  DoublingEstimate doubling;
  std::vector<CertBallRecord> balls;
};

inline CertSummary summarize(const CertReport& r) {
  CertSummary s;
  s.balls = static_cast<int>(r.balls.size());
  s.c_d = r.doubling.constant;
  const double inf = std::numeric_limits<double>::infinity();
  double cap_lo = inf, pi_lo = inf, cs_lo = inf, cl_lo = inf;
  auto fold = [&](const RatioCertificate& c, double& lo, double& hi) {
    if (c.infinite) {
      ++s.infinite;
      return;
    }
    lo = std::min(lo, c.value);
    hi = std::max(hi, c.value);
  };
  for (const CertBallRecord& rec : r.balls) {
    cap_lo = std::min(cap_lo, rec.cap.value);
    s.cap_max = std::max(s.cap_max, rec.cap.value);
    fold(rec.pi, pi_lo, s.pi_max);
    fold(rec.cs, cs_lo, s.cs_max);
    fold(rec.cs_classical, cl_lo, s.classical_max);
    if (rec.has_blend && std::isfinite(rec.c_wb)) s.wb_max = std::max(s.wb_max, rec.c_wb);
  }
  s.cap_min = std::isfinite(cap_lo) ? cap_lo : 0.0;
  s.pi_min = std::isfinite(pi_lo) ? pi_lo : 0.0;
  s.cs_min = std::isfinite(cs_lo) ? cs_lo : 0.0;
  s.classical_min = std::isfinite(cl_lo) ? cl_lo : 0.0;
  return s;
}

inline nlohmann::json ratio_cert_to_json(const RatioCertificate& c) {
  nlohmann::json j;
  j["value"] = c.infinite ? nlohmann::json() : nlohmann::json(c.value);
  j["method"] = cert_method_name(c.method);
  j["infinite"] = c.infinite;
  j["degenerate"] = c.degenerate;
  j["restarts"] = c.restarts;
  j["iterations"] = c.iterations;
  j["seed"] = c.seed;
  j["p"] = c.p;
  j["lambda"] = c.lambda;
  return j;
}

inline nlohmann::json cert_report_to_json(const CertReport& r) {
  nlohmann::json j;
  j["schema"] = "pdirichlet-report/1";
  j["family"] = r.family;
  j["level"] = r.level;
  j["p"] = r.p;
  j["beta"] = r.beta;
  j["lambda_pi"] = r.lambda_pi;
  j["lambda_whitney"] = r.lambda_whitney;
  nlohmann::json samples = nlohmann::json::array();
  for (const DoublingSample& s : r.doubling.samples)
    samples.push_back({{"center", s.ball.center}, {"radius", s.ball.radius}, {"ratio", s.ratio}});
  j["doubling"] = {{"constant", r.doubling.constant}, {"samples", samples}};
  const CertSummary s = summarize(r);
  j["summary"] = {{"balls", s.balls},
                  {"infinite", s.infinite},
                  {"c_d", s.c_d},
                  {"c_cap", {{"min", s.cap_min}, {"max", s.cap_max}}},
                  {"c_pi", {{"min", s.pi_min}, {"max", s.pi_max}}},
                  {"c_cs", {{"min", s.cs_min}, {"max", s.cs_max}}},
                  {"c_cs_classical", {{"min", s.classical_min}, {"max", s.classical_max}}},
                  {"c_wb_max", s.wb_max}};
  nlohmann::json balls = nlohmann::json::array();
  for (const CertBallRecord& rec : r.balls) {
    nlohmann::json jb;
    jb["center"] = rec.ball.center;
    jb["radius"] = rec.ball.radius;
    jb["c_cap"] = rec.cap.value;
    jb["capacity"] = rec.cap.capacity;
    jb["cutoff_degenerate"] = rec.cap.cutoff.degenerate;
    jb["solver"] = {{"converged", rec.cap.cutoff.cert.converged},
                    {"iterations", rec.cap.cutoff.cert.iterations},
                    {"residual", rec.cap.cutoff.cert.residual}};
    jb["c_pi"] = ratio_cert_to_json(rec.pi);
    jb["c_cs"] = ratio_cert_to_json(rec.cs);
    jb["c_cs_classical"] = ratio_cert_to_json(rec.cs_classical);
    if (rec.has_blend) jb["c_wb"] = rec.c_wb;
    balls.push_back(std::move(jb));
  }
  j["balls"] = std::move(balls);
  return j;
}

}  // namespace pdlab
