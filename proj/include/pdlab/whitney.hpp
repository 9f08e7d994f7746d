#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdlab/core.hpp"
#include "pdlab/graph.hpp"

namespace pdlab {

// --- Whitney covers of open sets ----------------------------------------
//
// A (C_D, Lambda)-Whitney cover of Omega is a ball family with
//   (1) Lambda^3 * rad(B) / 2 <= d(x_B, X \ Omega) <= Lambda^3 * rad(B),
//   (2) the Lambda^2-inflated balls overlap at most C_D times,
//   (3) the balls cover Omega.
// The construction slices Omega into dyadic distance bands
// Omega_i = { x : 2^{i-1} <= d(x, X \ Omega) <= 2^i }, picks a greedy
// 2^{i-3} Lambda^{-3}-net of each band, and emits balls of radius
// 2^i Lambda^{-3} around the net points.  With these radii, property (1) is
// the band condition itself, and net maximality gives property (3).

struct WhitneyBall {
  Ball ball;
  int scale_index = 0;  ///< i with 2^{i-1} <= d(center, X \ Omega) <= 2^i
};

struct WhitneyCover {
  std::vector<int> omega;  ///< the open set, ascending vertex ids
  double lambda = 8.0;
  std::vector<WhitneyBall> balls;  ///< ordered by (scale_index, center id)
};

namespace detail {

// Largest k with 2^k <= t (t > 0), by exact comparisons.
inline int dyadic_floor(double t) {
  int k = 0;
  if (t >= 1.0) {
    while (std::ldexp(1.0, k + 1) <= t) ++k;
  } else {
    while (std::ldexp(1.0, k) > t) --k;
  }
  return k;
}

// Smallest k with t <= 2^k.
inline int dyadic_ceil(double t) {
  int k = dyadic_floor(t);
  return (std::ldexp(1.0, k) == t) ? k : k + 1;
}

}  // namespace detail

inline WhitneyCover whitney_cover(const WeightedGraph& g, const std::vector<int>& omega,
                                  double lambda) {
  require(lambda >= 8.0, "Lambda >= 8", "Lambda = " + std::to_string(lambda));
  WhitneyCover cover;
  cover.omega = omega;
  std::sort(cover.omega.begin(), cover.omega.end());
  cover.lambda = lambda;
  if (cover.omega.empty()) return cover;  // empty set: empty cover
  auto outside = g.complement(cover.omega);
  require(!outside.empty(), "complement empty", "Whitney cover needs X \\ Omega nonempty");

  std::vector<double> dist_out(cover.omega.size());
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (std::size_t k = 0; k < cover.omega.size(); ++k) {
    dist_out[k] = g.dist_to_set(cover.omega[k], outside);
    dmin = std::min(dmin, dist_out[k]);
    dmax = std::max(dmax, dist_out[k]);
  }
  const int i_lo = detail::dyadic_floor(dmin);
  const int i_hi = detail::dyadic_ceil(dmax);
  const double lam3 = lambda * lambda * lambda;

  for (int i = i_lo; i <= i_hi; ++i) {
    const double lo = std::ldexp(1.0, i - 1), hi = std::ldexp(1.0, i);
    std::vector<int> band;
    for (std::size_t k = 0; k < cover.omega.size(); ++k)
      if (lo <= dist_out[k] && dist_out[k] <= hi) band.push_back(cover.omega[k]);
    if (band.empty()) continue;
    auto net = build_net(g, band, std::ldexp(1.0, i - 3) / lam3);
    for (int c : net) cover.balls.push_back({Ball{c, hi / lam3}, i});
  }
  return cover;
}

// --- certificates ---------------------------------------------------------

struct WhitneyCertificate {
  bool distance_band = true;  ///< property (1), exact per ball
  bool covers = true;         ///< property (3)
  bool scale_gap = true;      ///< vertex-sharing balls have |i - j| <= 2
  double overlap = 0.0;       ///< C_D: max multiplicity of Lambda^2-inflations
  int worst_ball = -1;        ///< witness index for a (1) failure
  int uncovered = -1;         ///< witness vertex for a (3) failure
  bool pass() const { return distance_band && covers && scale_gap; }
};

inline WhitneyCertificate whitney_certificate(const WeightedGraph& g,
                                              const WhitneyCover& cover) {
  WhitneyCertificate cert;
  if (cover.omega.empty()) return cert;
  auto outside = g.complement(cover.omega);
  const double lam3 = cover.lambda * cover.lambda * cover.lambda;

  std::vector<std::vector<char>> member_mask;
  member_mask.reserve(cover.balls.size());
  for (std::size_t b = 0; b < cover.balls.size(); ++b) {
    const WhitneyBall& wb = cover.balls[b];
    double d = g.dist_to_set(wb.ball.center, outside);
    if (!(lam3 * wb.ball.radius / 2.0 <= d && d <= lam3 * wb.ball.radius)) {
      cert.distance_band = false;
      if (cert.worst_ball < 0) cert.worst_ball = static_cast<int>(b);
    }
    member_mask.push_back(g.mask(g.ball_members(wb.ball)));
  }

  std::vector<char> covered(g.n(), 0);
  for (const auto& m : member_mask)
    for (int x = 0; x < g.n(); ++x)
      if (m[x]) covered[x] = 1;
  for (int x : cover.omega)
    if (!covered[x]) {
      cert.covers = false;
      if (cert.uncovered < 0) cert.uncovered = x;
    }

  for (std::size_t a = 0; a < cover.balls.size() && cert.scale_gap; ++a)
    for (std::size_t b = a + 1; b < cover.balls.size() && cert.scale_gap; ++b) {
      if (std::abs(cover.balls[a].scale_index - cover.balls[b].scale_index) <= 2) continue;
      // Sharing a vertex forces d(centers) < rad(A) + rad(B); cheap prefilter.
      if (g.dist(cover.balls[a].ball.center, cover.balls[b].ball.center) >=
          cover.balls[a].ball.radius + cover.balls[b].ball.radius)
        continue;
      for (int x = 0; x < g.n(); ++x)
        if (member_mask[a][x] && member_mask[b][x]) {
          cert.scale_gap = false;
          break;
        }
    }

  for (int x = 0; x < g.n(); ++x) {
    int count = 0;
    for (const WhitneyBall& wb : cover.balls)
      if (g.dist(x, wb.ball.center) < cover.lambda * cover.lambda * wb.ball.radius) ++count;
    cert.overlap = std::max(cert.overlap, static_cast<double>(count));
  }
  return cert;
}

// --- neighbor geometry ----------------------------------------------------

struct NeighborWitness {
  int a = -1, b = -1;  ///< indices into cover.balls
  std::string claim;
};

struct NeighborGeometryReport {
  int checked_pairs = 0;  ///< ordered pairs with d(B, B') <= 2 rad(B')
  bool pass = true;
  std::vector<NeighborWitness> witnesses;
};

// For near pairs (d(B, B') <= 2 rad(B'), distance between member sets) the
// cover's dyadic radii force rad(B)/rad(B') <= 3 both ways, B inside 16B',
// and B' inside 16B.  Vacuously true for a cover with no near pairs.
inline NeighborGeometryReport neighbor_geometry_check(const WeightedGraph& g,
                                                      const WhitneyCover& cover) {
  NeighborGeometryReport rep;
  std::vector<std::vector<int>> members(cover.balls.size());
  for (std::size_t b = 0; b < cover.balls.size(); ++b)
    members[b] = g.ball_members(cover.balls[b].ball);

  auto set_dist = [&](const std::vector<int>& A, const std::vector<int>& B) {
    double d = std::numeric_limits<double>::infinity();
    for (int x : A)
      for (int y : B) d = std::min(d, g.dist(x, y));
    return d;
  };
  auto inside = [&](const std::vector<int>& mem, const Ball& big) {
    auto mask = g.mask(g.ball_members(big));
    for (int x : mem)
      if (!mask[x]) return false;
    return true;
  };
  auto fail = [&](std::size_t a, std::size_t b, const char* claim) {
    rep.pass = false;
    rep.witnesses.push_back({static_cast<int>(a), static_cast<int>(b), claim});
  };

  for (std::size_t a = 0; a < cover.balls.size(); ++a)
    for (std::size_t b = 0; b < cover.balls.size(); ++b) {
      if (a == b) continue;
      const Ball& A = cover.balls[a].ball;
      const Ball& B = cover.balls[b].ball;
      // d(B, B') >= d(centers) - rad(A) - rad(B): cheap reject before the
      // member-set distance scan.
      if (g.dist(A.center, B.center) - A.radius - B.radius > 2.0 * B.radius) continue;
      if (set_dist(members[a], members[b]) > 2.0 * B.radius) continue;
      ++rep.checked_pairs;
      if (A.radius > 3.0 * B.radius) fail(a, b, "rad(B) <= 3 rad(B')");
      if (B.radius > 3.0 * A.radius) fail(a, b, "rad(B') <= 3 rad(B)");
      if (!inside(members[a], Ball{B.center, 16.0 * B.radius})) fail(a, b, "B inside 16B'");
      if (!inside(members[b], Ball{A.center, 16.0 * A.radius})) fail(a, b, "B' inside 16B");
    }
  return rep;
}

// --- serialization --------------------------------------------------------

inline nlohmann::json cover_to_json(const WhitneyCover& cover) {
  nlohmann::json balls = nlohmann::json::array();
  for (const WhitneyBall& wb : cover.balls)
    balls.push_back({{"center", wb.ball.center},
                     {"radius", wb.ball.radius},
                     {"scale_index", wb.scale_index}});
  return {{"omega", cover.omega}, {"lambda", cover.lambda}, {"balls", balls}};
}

}  // namespace pdlab
