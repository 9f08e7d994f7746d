#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/energy.hpp"
#include "pdlab/graph.hpp"
#include "pdlab/scale.hpp"
#include "pdlab/solver.hpp"

namespace pdlab {

// --- Sobolev partitions of unity -----------------------------------------
//
// Given balls B_1, B_2, ... with cutoffs psi_n (1 on B_n, 0 off 2B_n), the
// partition is the greedy recursion in the chosen order:
//   phi_n = min(psi_n, 1 - sum_{k<n} phi_k).
// Mass saturates at 1, each phi_n vanishes off 2B_n, and the sum equals 1 on
// the union of the balls.  The prefix sums stay in [0,1] exactly in floating
// point: once the running sum s reaches [1/2, 1], the complement 1 - s is
// computed exactly (Sterbenz), so saturation lands on 1.0 and stays there.

enum class BallOrdering {
  kGivenOrder,
  kDecreasingRadius,  ///< ties broken by ascending center id
};

struct PartitionCertificate {
  bool in_range = true;      ///< every phi value in [0,1], exact comparisons
  bool off_support = true;   ///< phi_n == 0 off members(2B_n), exact
  bool prefix_range = true;  ///< every prefix sum in [0,1], exact
  bool greedy_saturation = true;  ///< final sum < 1 - 1e-12 forces phi_k == psi_k
  double unity_defect = 0.0;      ///< max |sum phi - 1| over the union of balls
  bool pass() const {
    return in_range && off_support && prefix_range && greedy_saturation &&
           unity_defect <= 1e-12;
  }
};

struct SobolevPartition {
  std::vector<Ball> balls;          ///< in construction order
  std::vector<VertexFunction> phi;  ///< phi[n] subordinate to balls[n]
  std::vector<VertexFunction> psi;  ///< cutoffs used, same order
  double p = 2.0;
  double c_n = 0.0;  ///< measured local finiteness: max #{B' : B' meets 2B}
  PartitionCertificate cert;
};

namespace detail {

inline std::vector<std::size_t> partition_order(const std::vector<Ball>& balls,
                                                BallOrdering ordering) {
  std::vector<std::size_t> idx(balls.size());
  std::iota(idx.begin(), idx.end(), 0u);
  if (ordering == BallOrdering::kDecreasingRadius)
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (balls[a].radius != balls[b].radius) return balls[a].radius > balls[b].radius;
      return balls[a].center < balls[b].center;
    });
  return idx;
}

}  // namespace detail

// Builds the partition from supplied cutoffs (one per ball, in the input
// ball order; reordered together with the balls).
inline SobolevPartition sobolev_partition(const WeightedGraph& g,
                                          const std::vector<Ball>& balls,
                                          const std::vector<VertexFunction>& cutoffs,
                                          double p,
                                          BallOrdering ordering = BallOrdering::kDecreasingRadius) {
  require(p > 1.0, "p > 1", "p = " + std::to_string(p));
  require(balls.size() == cutoffs.size(), "one cutoff per ball",
          std::to_string(cutoffs.size()) + " cutoffs for " + std::to_string(balls.size()) +
              " balls");
  SobolevPartition part;
  part.p = p;
  auto order = detail::partition_order(balls, ordering);

  for (std::size_t n : order) {
    require(static_cast<int>(cutoffs[n].size()) == g.n(), "cutoff defined on all vertices",
            "ball " + std::to_string(n));
    auto inner = g.mask(g.ball_members(balls[n]));
    auto twice = g.mask(g.ball_members({balls[n].center, 2.0 * balls[n].radius}));
    for (int x = 0; x < g.n(); ++x) {
      if (inner[x])
        require(std::abs(cutoffs[n][x] - 1.0) <= 1e-12, "cutoff equals 1 on its ball",
                "ball " + std::to_string(n) + " vertex " + std::to_string(x));
      if (!twice[x])
        require(std::abs(cutoffs[n][x]) <= 1e-12, "cutoff vanishes off the doubled ball",
                "ball " + std::to_string(n) + " vertex " + std::to_string(x));
      require(cutoffs[n][x] >= 0.0 && cutoffs[n][x] <= 1.0, "cutoff in [0,1]",
              "ball " + std::to_string(n) + " vertex " + std::to_string(x));
    }
    part.balls.push_back(balls[n]);
    part.psi.push_back(cutoffs[n]);
  }

  VertexFunction prefix(g.n(), 0.0);
  for (std::size_t n = 0; n < part.balls.size(); ++n) {
    VertexFunction phi(g.n(), 0.0);
    for (int x = 0; x < g.n(); ++x) {
      phi[x] = std::max(0.0, std::min(part.psi[n][x], 1.0 - prefix[x]));
      prefix[x] += phi[x];
      part.cert.in_range = part.cert.in_range && phi[x] >= 0.0 && phi[x] <= 1.0;
      part.cert.prefix_range = part.cert.prefix_range && prefix[x] >= 0.0 && prefix[x] <= 1.0;
    }
    part.phi.push_back(std::move(phi));
  }

  // Certificate: support, unity on the union, greedy saturation.
  std::vector<char> in_union(g.n(), 0);
  for (std::size_t n = 0; n < part.balls.size(); ++n) {
    auto twice = g.mask(g.ball_members({part.balls[n].center, 2.0 * part.balls[n].radius}));
    for (int x = 0; x < g.n(); ++x)
      if (!twice[x] && part.phi[n][x] != 0.0) part.cert.off_support = false;
    for (int x : g.ball_members(part.balls[n])) in_union[x] = 1;
  }
  for (int x = 0; x < g.n(); ++x) {
    if (in_union[x])
      part.cert.unity_defect = std::max(part.cert.unity_defect, std::abs(prefix[x] - 1.0));
    if (prefix[x] < 1.0 - 1e-12)
      for (std::size_t n = 0; n < part.balls.size(); ++n)
        if (part.phi[n][x] != part.psi[n][x]) part.cert.greedy_saturation = false;
  }

  // Local finiteness, measured on the collection (self included).
  std::vector<std::vector<int>> members(part.balls.size());
  for (std::size_t n = 0; n < part.balls.size(); ++n)
    members[n] = g.ball_members(part.balls[n]);
  for (std::size_t n = 0; n < part.balls.size(); ++n) {
    auto twice = g.mask(g.ball_members({part.balls[n].center, 2.0 * part.balls[n].radius}));
    int count = 0;
    for (std::size_t m = 0; m < part.balls.size(); ++m) {
      if (g.dist(part.balls[m].center, part.balls[n].center) >=
          part.balls[m].radius + 2.0 * part.balls[n].radius)
        continue;  // members(B_m) cannot meet members(2B_n)
      for (int x : members[m])
        if (twice[x]) {
          ++count;
          break;
        }
    }
    part.c_n = std::max(part.c_n, static_cast<double>(count));
  }
  return part;
}

// Convenience: cutoffs from the p-capacity minimizers of the balls.
inline SobolevPartition sobolev_partition(const WeightedGraph& g,
                                          const std::vector<Ball>& balls, double p,
                                          BallOrdering ordering = BallOrdering::kDecreasingRadius,
                                          const SolverOptions& opts = {}) {
  std::vector<VertexFunction> cutoffs;
  cutoffs.reserve(balls.size());
  for (const Ball& b : balls) cutoffs.push_back(capacity_minimizer(g, b, p, opts).values);
  return sobolev_partition(g, balls, cutoffs, p, ordering);
}

// --- energy audit ---------------------------------------------------------
//
// Per ball, the vertex set splits into E = {phi_n == psi_n}, F_= (saturated
// before ball n) and F_< (partially filled).  On a graph the continuum
// locality steps hold exactly on interiors:
//   - Gamma<phi_n>(interior F_=) == 0 (phi_n vanishes on F_= and neighbors),
//   - Gamma<phi_n>(interior E) == Gamma<psi_n>(interior E),
//   - on interior F_<, phi_n = 1 - sum_{j in J_n} psi_j with J_n the prior
//     balls whose doubled members meet this ball's doubled members, so the
//     Minkowski inequality bounds the energy by (sum_j Gamma<psi_j>(X)^{1/p})^p.
// Full-set masses are reported alongside; they decompose Gamma<phi_n>(X).

struct PartitionBallAudit {
  int index = 0;               ///< position in partition order
  double e_mass = 0.0;         ///< Gamma<phi_n>(E)
  double f_lt_mass = 0.0;      ///< Gamma<phi_n>(F_<)
  double f_eq_mass = 0.0;      ///< Gamma<phi_n>(F_=)
  double interior_f_eq = 0.0;  ///< Gamma<phi_n>(interior F_=), exactly 0
  double e_slack = 0.0;        ///< slack of interior-E comparison vs psi_n
  double f_lt_slack = 0.0;     ///< slack of the J_n Minkowski bound
  int j_count = 0;             ///< |J_n|
  double c_b = 0.0;            ///< Gamma<phi_n>(X) * Psi(B_n) / mu(B_n)
  double c_cap = 0.0;          ///< Gamma<psi_n>(X) * Psi(B_n) / mu(B_n)
  double decomposition_gap = 0.0;  ///< |E + F_< + F_= - Gamma<phi_n>(X)| (relative)
};

struct PartitionAudit {
  std::vector<PartitionBallAudit> balls;
  double c_b = 0.0;    ///< max over balls
  double c_cap = 0.0;  ///< max over balls (cutoff energies)
  int j_max = 0;
  bool pass = true;  ///< all exact forms hold, slacks >= -1e-12
};

inline PartitionAudit partition_energy_audit(const WeightedGraph& g,
                                             const SobolevPartition& part,
                                             const ScaleFunction& scale) {
  PartitionAudit audit;
  const double p = part.p;
  const std::size_t count = part.balls.size();

  std::vector<EnergyMeasure> phi_energy, psi_energy;
  std::vector<double> psi_total(count);
  for (std::size_t n = 0; n < count; ++n) {
    phi_energy.push_back(energy_measure(g, part.phi[n], p));
    psi_energy.push_back(energy_measure(g, part.psi[n], p));
    psi_total[n] = psi_energy[n].total();
  }
  std::vector<std::vector<char>> twice(count);
  for (std::size_t n = 0; n < count; ++n)
    twice[n] = g.mask(g.ball_members({part.balls[n].center, 2.0 * part.balls[n].radius}));

  VertexFunction prefix(g.n(), 0.0);
  for (std::size_t n = 0; n < count; ++n) {
    PartitionBallAudit b;
    b.index = static_cast<int>(n);
    std::vector<int> setE, setFlt, setFeq;
    for (int x = 0; x < g.n(); ++x) {
      if (part.phi[n][x] == part.psi[n][x])
        setE.push_back(x);
      else if (prefix[x] == 1.0)
        setFeq.push_back(x);
      else
        setFlt.push_back(x);
      prefix[x] += part.phi[n][x];
    }
    b.e_mass = phi_energy[n].of(setE);
    b.f_lt_mass = phi_energy[n].of(setFlt);
    b.f_eq_mass = phi_energy[n].of(setFeq);
    double total = phi_energy[n].total();
    b.decomposition_gap = std::abs(b.e_mass + b.f_lt_mass + b.f_eq_mass - total) /
                          std::max(total, 1.0);

    auto intFeq = g.interior(setFeq);
    b.interior_f_eq = phi_energy[n].of(intFeq);
    auto intE = g.interior(setE);
    b.e_slack = le_slack(phi_energy[n].of(intE), psi_energy[n].of(intE));

    double rhs_root = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      // Doubled members can only meet when the centers are close enough.
      if (g.dist(part.balls[j].center, part.balls[n].center) >=
          2.0 * (part.balls[j].radius + part.balls[n].radius))
        continue;
      bool meets = false;
      for (int x = 0; x < g.n() && !meets; ++x) meets = twice[j][x] && twice[n][x];
      if (meets) {
        ++b.j_count;
        rhs_root += std::pow(psi_total[j], 1.0 / p);
      }
    }
    b.f_lt_slack = le_slack(phi_energy[n].of(g.interior(setFlt)), std::pow(rhs_root, p));

    double weight = scale.of_ball(part.balls[n]) / g.mu_of_ball(part.balls[n]);
    b.c_b = total * weight;
    b.c_cap = psi_total[n] * weight;

    audit.pass = audit.pass && b.interior_f_eq == 0.0 && b.e_slack >= -1e-12 &&
                 b.f_lt_slack >= -1e-12 && b.decomposition_gap <= 1e-12;
    audit.c_b = std::max(audit.c_b, b.c_b);
    audit.c_cap = std::max(audit.c_cap, b.c_cap);
    audit.j_max = std::max(audit.j_max, b.j_count);
    audit.balls.push_back(b);
  }
  return audit;
}

}  // namespace pdlab
