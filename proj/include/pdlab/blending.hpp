#pragma once
// Whitney blending: interpolate between a function f inside a ball B0 and a
// function g outside the inflated ball (1+eta)B0, paying energy only for the
// local oscillation of f-g.  The blend h is produced by averaging f-g over the
// near Whitney balls of the annulus and summing against the Sobolev partition
// of unity; boundary values are assigned, not computed, so the agreement
// h = f on B0 and h = g off (1+eta)B0 is machine-exact.
//
// The same machinery drives the membership check for the Poincare
// characterization of the energy domain: discrete convolutions h_k over
// scale-2^{-k} nets, a hypothesis sweep over small balls, and the chained
// estimate bounding Gamma_p<h_k>(A) by nu of an inflated set.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/energy.hpp"
#include "pdlab/graph.hpp"
#include "pdlab/partition.hpp"
#include "pdlab/scale.hpp"
#include "pdlab/solver.hpp"
#include "pdlab/whitney.hpp"

namespace pdlab {

struct BlendResult {
  VertexFunction h;
  VertexFunction f, g;  ///< inputs (g is the outer function)
  Ball b0;
  double eta = 0.5;
  double p = 2.0;
  double lambda = 8.0;

  std::vector<int> annulus;  ///< members((1+eta)B0) minus ball_closure(B0)
  WhitneyCover cover;        ///< Whitney cover of the annulus
  SobolevPartition partition;
  std::vector<char> near;  ///< per partition ball: d(center, B0) <= (eta/2) rad(B0)
  std::vector<double> c;   ///< coefficient per partition ball ((f-g)_B if near, else 0)

  bool degenerate = false;     ///< X = (1+eta)B0: nothing to blend, h = f
  bool annulus_empty = false;  ///< no vertices strictly between B0 and (1+eta)B0

  double c_wb = std::numeric_limits<double>::quiet_NaN();  ///< set by blend_energy_report
};

// Blend f (inside B0) with g (outside (1+eta)B0) across the annulus.
inline BlendResult whitney_blend(const WeightedGraph& g, const VertexFunction& f,
                                 const VertexFunction& g_outer, const Ball& b0,
                                 double eta, double p, double lambda = 8.0,
                                 const SolverOptions& opts = {}) {
  require(eta > 0.0 && eta < 1.0, "eta in (0,1)", "eta = " + std::to_string(eta));
  require(static_cast<int>(f.size()) == g.n() && static_cast<int>(g_outer.size()) == g.n(),
          "f and g defined on all vertices", "sizes " + std::to_string(f.size()) + ", " +
              std::to_string(g_outer.size()) + " for n = " + std::to_string(g.n()));

  BlendResult out;
  out.f = f;
  out.g = g_outer;
  out.b0 = b0;
  out.eta = eta;
  out.p = p;
  out.lambda = lambda;

  const Ball big_ball{b0.center, (1.0 + eta) * b0.radius};
  const auto big = g.ball_members(big_ball);
  if (static_cast<int>(big.size()) == g.n()) {
    // No outside region: the claim is vacuous and the blend is f itself.
    out.h = f;
    out.degenerate = true;
    return out;
  }

  const auto inner_closed = g.ball_closure(b0);
  const auto closed_mask = g.mask(inner_closed);
  std::vector<char> annulus_mask(g.n(), 0);
  for (int x : big)
    if (!closed_mask[x]) {
      annulus_mask[x] = 1;
      out.annulus.push_back(x);
    }

  // Assigned boundary values: f on the closed ball, g off the inflated ball.
  out.h = g_outer;
  for (int x : inner_closed) out.h[x] = f[x];

  if (out.annulus.empty()) {
    out.annulus_empty = true;
    return out;
  }

  out.cover = whitney_cover(g, out.annulus, lambda);
  std::vector<Ball> balls;
  balls.reserve(out.cover.balls.size());
  for (const WhitneyBall& wb : out.cover.balls) balls.push_back(wb.ball);
  out.partition = sobolev_partition(g, balls, p, BallOrdering::kDecreasingRadius, opts);

  VertexFunction ftilde(g.n());
  for (int x = 0; x < g.n(); ++x) ftilde[x] = f[x] - g_outer[x];

  const auto b0_members = g.ball_members(b0);
  const double near_reach = 0.5 * eta * b0.radius;
  const std::size_t nb = out.partition.balls.size();
  out.near.assign(nb, 0);
  out.c.assign(nb, 0.0);
  for (std::size_t i = 0; i < nb; ++i) {
    const Ball& b = out.partition.balls[i];
    if (g.dist_to_set(b.center, b0_members) <= near_reach) {
      out.near[i] = 1;
      out.c[i] = g.average(ftilde, g.ball_members(b));
    }
  }

  for (int x : out.annulus) {
    double s = 0.0;
    for (std::size_t i = 0; i < nb; ++i)
      if (out.near[i]) s += out.partition.phi[i][x] * out.c[i];
    out.h[x] = g_outer[x] + s;
  }
  return out;
}

struct BlendEnergyReport {
  double lhs = 0.0;       ///< Gamma_p<h>(2B0)
  double term_avg = 0.0;  ///< [mu(B0)/Psi(B0)] avg_{(1+eta)B0} |f-g|^p
  double term_f = 0.0;    ///< Gamma_p<f>(2B0)
  double term_g = 0.0;    ///< Gamma_p<g>(2B0)
  double rhs = 0.0;
  double ratio = 0.0;  ///< lhs/rhs, 0/0 -> 0
  bool finite = true;

  // L^p bound of the construction: integral of |h-g|^p against the same
  // integral of |f-g|^p, both over (1+eta)B0 (h-g vanishes exactly outside).
  double lp_lhs = 0.0;
  double lp_rhs = 0.0;
  double lp_bound = 1.0;  ///< max(1, overlap_near * max mu(2B)/mu(B) over near balls)
  double overlap_near = 0.0;
  bool lp_pass = true;
};

// Measures both sides of the blending energy bound on 2B0 and the L^p bound
// of the construction; records the ratio into result.c_wb.
inline BlendEnergyReport blend_energy_report(const WeightedGraph& g, BlendResult& result,
                                             const ScaleFunction& scale) {
  BlendEnergyReport rep;
  const double p = result.p;
  const auto two_b0 = g.ball_members({result.b0.center, 2.0 * result.b0.radius});
  const auto big = g.ball_members({result.b0.center, (1.0 + result.eta) * result.b0.radius});

  rep.lhs = energy_measure(g, result.h, p).of(two_b0);
  rep.term_f = energy_measure(g, result.f, p).of(two_b0);
  rep.term_g = energy_measure(g, result.g, p).of(two_b0);

  VertexFunction ftilde(g.n());
  for (int x = 0; x < g.n(); ++x) ftilde[x] = result.f[x] - result.g[x];
  const double mu_big = g.mu_of(big);
  const double osc = p_integral(big, ftilde, 0.0, p, g.mu());
  rep.term_avg = (g.mu_of_ball(result.b0) / scale.of_ball(result.b0)) * (osc / mu_big);

  rep.rhs = rep.term_avg + rep.term_f + rep.term_g;
  rep.ratio = rep.lhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  rep.finite = std::isfinite(rep.ratio);
  result.c_wb = rep.ratio;

  // h-g == 0 exactly off (1+eta)B0, so both integrals live on big.
  for (int x : big) {
    rep.lp_lhs += pow_abs(result.h[x] - result.g[x], p) * g.mu(x);
    rep.lp_rhs += pow_abs(ftilde[x], p) * g.mu(x);
  }
  double worst_mu_ratio = 0.0;
  std::vector<int> near_count(g.n(), 0);
  for (std::size_t i = 0; i < result.near.size(); ++i) {
    if (!result.near[i]) continue;
    const Ball& b = result.partition.balls[i];
    const auto members = g.ball_members(b);
    worst_mu_ratio = std::max(
        worst_mu_ratio, g.mu_of_ball({b.center, 2.0 * b.radius}) / g.mu_of(members));
    for (int x : members) ++near_count[x];
  }
  for (int m : near_count) rep.overlap_near = std::max(rep.overlap_near, double(m));
  rep.lp_bound = std::max(1.0, rep.overlap_near * worst_mu_ratio);
  rep.lp_pass = rep.lp_lhs <= rep.lp_bound * rep.lp_rhs * (1.0 + 1e-12) + 1e-300;
  return rep;
}

// --- discrete convolution over a scale net --------------------------------

struct ConvolutionResult {
  VertexFunction h_k;
  int k = 0;
  double radius = 0.0;  ///< 2^{-k}
  std::vector<int> net;
  SobolevPartition partition;
  std::vector<double> ball_means;
  double lp_distance = 0.0;  ///< ||h_k - h||_p
  bool too_fine = false;     ///< 2^{-k} below the minimal positive distance: h_k = h
};

// h_k = sum_B h_B phi_B over balls of radius 2^{-k} centered on a 2^{-k}-net.
inline ConvolutionResult discrete_convolution(const WeightedGraph& g,
                                              const VertexFunction& h, int k, double p,
                                              const SolverOptions& opts = {}) {
  require(static_cast<int>(h.size()) == g.n(), "h defined on all vertices",
          "size " + std::to_string(h.size()));
  ConvolutionResult out;
  out.k = k;
  out.radius = std::ldexp(1.0, -k);

  double min_len = std::numeric_limits<double>::infinity();
  for (const Edge& e : g.edges()) min_len = std::min(min_len, e.len);
  if (out.radius < min_len) {
    out.too_fine = true;  // every ball is a singleton and the sum collapses to h
    out.h_k = h;
    return out;
  }

  std::vector<int> all(g.n());
  std::iota(all.begin(), all.end(), 0);
  out.net = build_net(g, all, out.radius);
  std::vector<Ball> balls;
  balls.reserve(out.net.size());
  for (int c : out.net) balls.push_back({c, out.radius});
  out.partition = sobolev_partition(g, balls, p, BallOrdering::kDecreasingRadius, opts);

  // The cutoffs are only scaffolding for phi; on fine nets (one ball per
  // vertex) they dominate memory, so drop them.
  out.partition.psi.clear();
  out.partition.psi.shrink_to_fit();

  out.ball_means.resize(out.partition.balls.size());
  for (std::size_t i = 0; i < out.partition.balls.size(); ++i)
    out.ball_means[i] = g.average(h, g.ball_members(out.partition.balls[i]));

  out.h_k.assign(g.n(), 0.0);
  for (std::size_t i = 0; i < out.partition.balls.size(); ++i)
    for (int x = 0; x < g.n(); ++x) out.h_k[x] += out.ball_means[i] * out.partition.phi[i][x];

  double dist = 0.0;
  for (int x = 0; x < g.n(); ++x) dist += pow_abs(out.h_k[x] - h[x], p) * g.mu(x);
  out.lp_distance = std::pow(dist, 1.0 / p);
  return out;
}

// --- the nu measure of the blending construction --------------------------

// Largest admissible sweep radius: delta with (12 + 6 Lambda^3) C_delta <= eta/2
// where delta = C_delta rad(B0).
inline double compliant_delta(double eta, double lambda, double r0) {
  return 0.5 * eta / (12.0 + 6.0 * lambda * lambda * lambda) * r0;
}

// nu = sum_B [Psi(B)/mu(B)] Gamma_p<f-g>(2 Lambda^2 B) Gamma_p<psi_B>
//      + Gamma_p<f-g>
//      + avg_{(1+eta)B0} |f-g|^p * sum_{rad(B) >= eta/(12 Lambda^3) rad(B0)} Gamma_p<psi_B>
inline EnergyMeasure assemble_blend_nu(const WeightedGraph& g, const BlendResult& blend,
                                       const ScaleFunction& scale) {
  EnergyMeasure nu;
  nu.mass.assign(g.n(), 0.0);

  VertexFunction ftilde(g.n());
  for (int x = 0; x < g.n(); ++x) ftilde[x] = blend.f[x] - blend.g[x];
  const EnergyMeasure ft_energy = energy_measure(g, ftilde, blend.p);

  const double lam = blend.lambda;
  const double rad_gate = blend.eta / (12.0 * lam * lam * lam) * blend.b0.radius;
  const auto big = g.ball_members({blend.b0.center, (1.0 + blend.eta) * blend.b0.radius});
  const double avg_term = p_integral(big, ftilde, 0.0, blend.p, g.mu()) / g.mu_of(big);

  for (std::size_t i = 0; i < blend.partition.balls.size(); ++i) {
    const Ball& b = blend.partition.balls[i];
    const EnergyMeasure psi_energy = energy_measure(g, blend.partition.psi[i], blend.p);
    const double w =
        scale.of_ball(b) / g.mu_of_ball(b) *
        ft_energy.of(g.ball_members({b.center, 2.0 * lam * lam * b.radius}));
    const double big_coeff = b.radius >= rad_gate ? avg_term : 0.0;
    for (int x = 0; x < g.n(); ++x)
      nu.mass[x] += (w + big_coeff) * psi_energy.mass[x];
  }
  for (int x = 0; x < g.n(); ++x) nu.mass[x] += ft_energy.mass[x];
  return nu;
}

// --- membership check -----------------------------------------------------

// Case of the blending proof a swept ball falls into.
enum class BlendCase {
  kInsideCore,      ///< B inside the closed ball B0 (h = f there)
  kOutsideShell,    ///< B inside X minus (1+eta)B0 (h = g there)
  kNoNearNeighbor,  ///< B meets the annulus but no near ball: h-g = 0 on B∩Ω
  kSmallStar,       ///< largest intersecting cover ball B* has rad(B*) <= rad(B)
  kLargeStar,       ///< rad(B*) > rad(B)
  kStraddle,        ///< touches the closed ball boundary without meeting the annulus
};

struct MembershipBallRecord {
  Ball ball;
  int members = 0;
  double lhs = 0.0;    ///< avg_B |h - h_B|^p
  double rhs = 0.0;    ///< [Psi(B)/mu(B)] nu(Lambda B)
  double ratio = 0.0;  ///< lhs/rhs, 0/0 -> 0
  // Blend-context fields (when a blend is supplied):
  BlendCase blend_case = BlendCase::kStraddle;
  double m_b = 0.0;             ///< the proof's per-case comparison constant
  double shortcut_lhs = 0.0;    ///< avg_B |(h-g) - m_B|^p
  double reduction_slack = 0.0; ///< 2^{p+1} shortcut_lhs - lhs(h-g), >= 0 exactly
};

struct MembershipChain {
  bool ran = false;
  bool identity = false;    ///< net at or below edge scale: h_k == h
  bool degenerate = false;  ///< some ball has energy but no intersecting neighbor
  double local_constant = 0.0;     ///< Gamma<h_k>(B) vs sum over neighbors
  double neighbor_constant = 0.0;  ///< |h_B - h_B'|^p vs [Psi(4B)/mu(4B)] nu(4 Lambda B)
  double overlap = 0.0;            ///< multiplicity of the inflated balls over A_k
  bool cover_subadditive = true;   ///< Gamma<h_k>(A) <= sum_B Gamma<h_k>(B∩A)
};

struct MembershipReport {
  double lambda = 8.0, delta = 0.0, p = 2.0;
  std::vector<MembershipBallRecord> balls;
  double hypothesis_constant = 0.0;
  int worst_ball = -1;
  bool hypothesis_pass = true;  ///< no ball with lhs > 0 and rhs == 0
  bool vacuous = false;         ///< every swept ball is a singleton

  int k = 0;
  ConvolutionResult conv;
  double conclusion_constant = 0.0;  ///< max over closed sets A of Gamma<h_k>(A)/nu(A_k)
  MembershipChain chain;

  bool blend_context = false;
  bool delta_compliant = true;  ///< delta within the C_delta gate (blend context)
  bool exploratory = false;     ///< blend context swept beyond the compliant delta
  std::array<int, 6> case_counts{};
  double worst_shortcut = 0.0;
  double min_reduction_slack = 0.0;

  bool pass() const {
    return hypothesis_pass && std::isfinite(hypothesis_constant) &&
           std::isfinite(conclusion_constant);
  }
};

namespace detail {

// One representative radius per distinct member set of balls around `center`,
// capped at delta: midpoints of consecutive realized distances.
inline std::vector<double> sweep_radii(const WeightedGraph& g, int center, double delta) {
  auto ds = g.realized_distances(center);
  std::vector<double> out;
  for (std::size_t j = 1; j < ds.size(); ++j) {
    double mid = 0.5 * (ds[j - 1] + ds[j]);
    if (mid <= delta) out.push_back(mid);
  }
  if (!ds.empty() && delta > ds.back()) out.push_back(delta);  // the whole space
  return out;
}

// Precomputed geometry shared by every swept ball of a blend-context sweep.
struct BlendSweepContext {
  std::vector<char> closed_mask, big_mask, annulus_mask;
  std::vector<std::vector<int>> cover_members;  ///< per partition ball
  VertexFunction ftilde;

  BlendSweepContext(const WeightedGraph& g, const BlendResult& blend) {
    closed_mask = g.mask(g.ball_closure(blend.b0));
    big_mask =
        g.mask(g.ball_members({blend.b0.center, (1.0 + blend.eta) * blend.b0.radius}));
    annulus_mask = g.mask(blend.annulus);
    for (const Ball& w : blend.partition.balls) cover_members.push_back(g.ball_members(w));
    ftilde.resize(g.n());
    for (int x = 0; x < g.n(); ++x) ftilde[x] = blend.f[x] - blend.g[x];
  }
};

// Returns the case and fills star (the maximal-radius intersecting cover ball)
// when one exists.
inline BlendCase classify_blend_case(const WeightedGraph& g, const BlendResult& blend,
                                     const BlendSweepContext& ctx, const Ball& b,
                                     const std::vector<int>& members, Ball* star) {
  bool inside = true, outside = true, meets_annulus = false;
  for (int x : members) {
    if (!ctx.closed_mask[x]) inside = false;
    if (ctx.big_mask[x]) outside = false;
    if (ctx.annulus_mask[x]) meets_annulus = true;
  }
  if (inside) return BlendCase::kInsideCore;
  if (outside) return BlendCase::kOutsideShell;
  if (!meets_annulus) return BlendCase::kStraddle;

  double star_rad = -1.0;
  bool meets_near = false;
  for (std::size_t i = 0; i < blend.partition.balls.size(); ++i) {
    const Ball& w = blend.partition.balls[i];
    if (g.dist(b.center, w.center) >= b.radius + w.radius) continue;
    bool meets = false;
    for (int x : ctx.cover_members[i])
      if (g.dist(b.center, x) < b.radius) { meets = true; break; }
    if (!meets) continue;
    if (w.radius > star_rad) {
      star_rad = w.radius;
      *star = w;
    }
    if (blend.near[i]) meets_near = true;
  }
  if (!meets_near) return BlendCase::kNoNearNeighbor;
  if (star_rad <= b.radius) return BlendCase::kSmallStar;
  return BlendCase::kLargeStar;
}

}  // namespace detail

// Verifies avg_B |h-h_B|^p <= C [Psi(B)/mu(B)] nu(Lambda B) over all balls of
// radius <= delta, then the chained estimate Gamma_p<h_k>(A) <= C' nu(A_k) on
// a family of closed sets.  When `blend` is supplied, each swept ball is
// classified into the blending proof's cases and the per-case comparison
// constant m_B is checked through the 2^{p+1} reduction step.
inline MembershipReport pi_membership_check(const WeightedGraph& g, const VertexFunction& h,
                                            const EnergyMeasure& nu, double lambda,
                                            double delta, double p,
                                            const ScaleFunction& scale,
                                            const BlendResult* blend = nullptr,
                                            const SolverOptions& opts = {}) {
  require(static_cast<int>(nu.mass.size()) == g.n(), "nu defined on all vertices",
          "size " + std::to_string(nu.mass.size()));
  for (int x = 0; x < g.n(); ++x)
    require(nu.mass[x] >= 0.0, "nu nonnegative",
            "nu(" + std::to_string(x) + ") = " + std::to_string(nu.mass[x]));
  require(delta > 0.0, "delta > 0", "delta = " + std::to_string(delta));

  MembershipReport rep;
  rep.lambda = lambda;
  rep.delta = delta;
  rep.p = p;
  rep.blend_context = blend != nullptr;

  VertexFunction htilde;  // reduced blend h - g; the case analysis runs on it
  std::unique_ptr<detail::BlendSweepContext> ctx;
  if (blend) {
    rep.delta_compliant = delta <= compliant_delta(blend->eta, lambda, blend->b0.radius) *
                                      (1.0 + 1e-12);
    rep.exploratory = !rep.delta_compliant;
    htilde.resize(g.n());
    for (int x = 0; x < g.n(); ++x) htilde[x] = h[x] - blend->g[x];
    ctx = std::make_unique<detail::BlendSweepContext>(g, *blend);
  }

  // --- hypothesis sweep ---------------------------------------------------
  rep.vacuous = true;
  const double shortcut_factor = std::pow(2.0, p + 1.0);
  rep.min_reduction_slack = std::numeric_limits<double>::infinity();
  for (int x = 0; x < g.n(); ++x) {
    for (double r : detail::sweep_radii(g, x, delta)) {
      MembershipBallRecord rec;
      rec.ball = {x, r};
      const auto members = g.ball_members(rec.ball);
      rec.members = static_cast<int>(members.size());
      if (rec.members > 1) rep.vacuous = false;
      const double h_b = g.average(h, members);
      rec.lhs = p_integral(members, h, h_b, p, g.mu()) / g.mu_of(members);
      rec.rhs = scale.of_ball(rec.ball) / g.mu_of(members) *
                nu.of(g.ball_members({x, lambda * r}));
      if (rec.lhs > 0.0 && rec.rhs == 0.0) rep.hypothesis_pass = false;
      rec.ratio = rec.lhs > 0.0 ? rec.lhs / rec.rhs : 0.0;
      if (rec.ratio > rep.hypothesis_constant) {
        rep.hypothesis_constant = rec.ratio;
        rep.worst_ball = static_cast<int>(rep.balls.size());
      }

      if (blend) {
        Ball star{x, r};
        rec.blend_case =
            detail::classify_blend_case(g, *blend, *ctx, rec.ball, members, &star);
        ++rep.case_counts[static_cast<int>(rec.blend_case)];
        switch (rec.blend_case) {
          case BlendCase::kInsideCore:
          case BlendCase::kSmallStar:
            rec.m_b = g.average(ctx->ftilde, members);  // (f-g)_B
            break;
          case BlendCase::kLargeStar:
            // (f-g) averaged over the largest intersecting cover ball B*.
            rec.m_b = g.average(ctx->ftilde, g.ball_members(star));
            break;
          default:
            rec.m_b = 0.0;  // outside shell, no near neighbor, straddle
        }
        rec.shortcut_lhs = p_integral(members, htilde, rec.m_b, p, g.mu()) / g.mu_of(members);
        const double ht_b = g.average(htilde, members);
        const double ht_lhs = p_integral(members, htilde, ht_b, p, g.mu()) / g.mu_of(members);
        rec.reduction_slack = shortcut_factor * rec.shortcut_lhs - ht_lhs;
        rep.min_reduction_slack = std::min(rep.min_reduction_slack, rec.reduction_slack);
        const double shortcut_ratio =
            rec.shortcut_lhs > 0.0 && rec.rhs > 0.0 ? rec.shortcut_lhs / rec.rhs : 0.0;
        rep.worst_shortcut = std::max(rep.worst_shortcut, shortcut_ratio);
      }
      rep.balls.push_back(std::move(rec));
    }
  }
  if (!std::isfinite(rep.min_reduction_slack)) rep.min_reduction_slack = 0.0;

  // --- conclusion via the chained estimate --------------------------------
  // Net radius 2^{-k}: largest dyadic with 4 * 2^{-k} <= delta.
  int kk = detail::dyadic_floor(delta / 4.0);
  rep.k = -kk;
  rep.conv = discrete_convolution(g, h, rep.k, p, opts);
  rep.chain.ran = true;
  rep.chain.identity = rep.conv.too_fine;
  const double r_k = rep.conv.radius;
  const EnergyMeasure hk_energy = energy_measure(g, rep.conv.h_k, p);

  std::vector<std::vector<int>> ball_sets;
  std::vector<double> means;
  if (!rep.conv.too_fine) {
    for (std::size_t i = 0; i < rep.conv.partition.balls.size(); ++i) {
      ball_sets.push_back(g.ball_members(rep.conv.partition.balls[i]));
      means.push_back(rep.conv.ball_means[i]);
    }
  } else {
    for (int x = 0; x < g.n(); ++x) {
      ball_sets.push_back({x});
      means.push_back(h[x]);
    }
  }
  const std::size_t nball = ball_sets.size();
  std::vector<int> center(nball, 0);
  for (std::size_t i = 0; i < nball; ++i)
    center[i] = rep.conv.too_fine ? static_cast<int>(i) : rep.conv.partition.balls[i].center;

  // Pairwise intersections and the two measured links of the chain.
  for (std::size_t i = 0; i < nball; ++i) {
    double denom = 0.0;
    const auto mask_i = g.mask(ball_sets[i]);
    for (std::size_t j = 0; j < nball; ++j) {
      if (j == i) continue;
      if (g.dist(center[i], center[j]) >= 2.0 * r_k) continue;
      bool meets = false;
      for (int y : ball_sets[j])
        if (mask_i[y]) { meets = true; break; }
      if (!meets) continue;
      const Ball b4{center[i], 4.0 * r_k};
      const auto m4 = g.ball_members(b4);
      const double neighbor_rhs =
          scale.of_ball(b4) / g.mu_of(m4) * nu.of(g.ball_members({center[i], 4.0 * lambda * r_k}));
      const double diff = pow_abs(means[i] - means[j], p);
      if (diff > 0.0 && neighbor_rhs > 0.0)
        rep.chain.neighbor_constant = std::max(rep.chain.neighbor_constant, diff / neighbor_rhs);
      denom += diff * g.mu_of(ball_sets[j]) / scale.of_ball({center[j], r_k});
    }
    const double local = hk_energy.of(ball_sets[i]);
    if (local > 0.0) {
      if (denom > 0.0)
        rep.chain.local_constant = std::max(rep.chain.local_constant, local / denom);
      else
        rep.chain.degenerate = true;  // energy with no intersecting neighbor
    }
  }

  // Closed-set family: the whole space plus the default certification balls.
  std::vector<std::vector<int>> closed_sets;
  {
    std::vector<int> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    closed_sets.push_back(all);
    for (const Ball& b : default_ball_policy(g)) closed_sets.push_back(g.ball_closure(b));
  }
  for (const auto& a : closed_sets) {
    const double lhs = hk_energy.of(a);
    // A_k = {y : d(y, A) <= 4 Lambda 2^{-k}}
    std::vector<int> a_k;
    for (int y = 0; y < g.n(); ++y)
      if (g.dist_to_set(y, a) <= 4.0 * lambda * r_k) a_k.push_back(y);
    const double rhs = nu.of(a_k);
    if (lhs > 0.0 && rhs > 0.0)
      rep.conclusion_constant = std::max(rep.conclusion_constant, lhs / rhs);
    else if (lhs > 0.0 && rhs == 0.0)
      rep.conclusion_constant = std::numeric_limits<double>::infinity();

    // Subadditivity link: Gamma<h_k>(A) <= sum_B Gamma<h_k>(B ∩ A); exact for
    // a vertex measure once the balls cover A.
    const auto amask = g.mask(a);
    double covered = 0.0;
    std::vector<int> mult(g.n(), 0);
    for (std::size_t i = 0; i < nball; ++i)
      for (int y : ball_sets[i])
        if (amask[y] && ++mult[y] == 1) covered += hk_energy.mass[y];
    if (covered < lhs * (1.0 - 1e-12)) rep.chain.cover_subadditive = false;
    // Overlap link: multiplicity of the inflated balls Lambda B over A_k.
    std::vector<int> inflated_mult(g.n(), 0);
    for (std::size_t i = 0; i < nball; ++i) {
      bool meets_a = false;
      for (int y : ball_sets[i])
        if (amask[y]) { meets_a = true; break; }
      if (!meets_a) continue;
      for (int y : g.ball_members({center[i], lambda * r_k})) ++inflated_mult[y];
    }
    for (int y = 0; y < g.n(); ++y)
      rep.chain.overlap = std::max(rep.chain.overlap, double(inflated_mult[y]));
  }
  return rep;
}

inline nlohmann::json blend_to_json(const BlendResult& r, const BlendEnergyReport& rep) {
  nlohmann::json j;
  j["ball"] = {{"center", r.b0.center}, {"radius", r.b0.radius}};
  j["eta"] = r.eta;
  j["p"] = r.p;
  j["lambda"] = r.lambda;
  j["degenerate"] = r.degenerate;
  j["annulus_empty"] = r.annulus_empty;
  j["annulus_size"] = r.annulus.size();
  j["cover_balls"] = r.cover.balls.size();
  j["near_balls"] = std::count(r.near.begin(), r.near.end(), char(1));
  j["h"] = r.h;
  j["c_wb"] = rep.ratio;
  j["energy"] = {{"lhs", rep.lhs},
                 {"term_avg", rep.term_avg},
                 {"term_f", rep.term_f},
                 {"term_g", rep.term_g},
                 {"ratio", rep.ratio}};
  j["lp"] = {{"lhs", rep.lp_lhs}, {"rhs", rep.lp_rhs}, {"bound", rep.lp_bound},
             {"pass", rep.lp_pass}};
  return j;
}

}  // namespace pdlab
