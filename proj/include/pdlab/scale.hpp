#pragma once
// Regular scale functions Psi(x, r) on (0, 2 diam].
//
// Regularity, for 0 < s <= r <= 2 diam(X) and R = d(x,y):
//
//   C^-1 ((s v R)/r)^b+ (s/(r v R))^b-  <=  Psi(x,r)/Psi(y,s)
//                                       <=  C (r/(r v R))^b- ((r v R)/s)^b+
//
// The power law Psi = r^beta satisfies this with C = 1, b- = b+ = beta (the
// upper bound saturates at x = y).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pdlab/core.hpp"
#include "pdlab/graph.hpp"

namespace pdlab {

struct ScaleFunction {
  enum class Kind { kPower, kTable };
  Kind kind = Kind::kPower;
  double beta = 2.0;                  ///< power-law exponent (kPower)
  std::vector<double> radii, values;  ///< global table, log-log interpolated (kTable)

  // claimed regularity parameters, used by check_regularity
  double beta_minus = 2.0, beta_plus = 2.0, c_psi = 1.0;

  static ScaleFunction power(double beta_) {
    ScaleFunction s;
    s.kind = Kind::kPower;
    s.beta = s.beta_minus = s.beta_plus = beta_checked(beta_);
    s.c_psi = 1.0;
    return s;
  }

  static ScaleFunction table(std::vector<double> radii_, std::vector<double> values_,
                             double bm, double bp, double c) {
    require(radii_.size() >= 2 && radii_.size() == values_.size(),
            "table has >= 2 strictly increasing radii", "scale table");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
      require(radii_[i] > 0.0 && values_[i] > 0.0, "table entries positive",
              "scale table row " + std::to_string(i));
      if (i) require(radii_[i] > radii_[i - 1], "radii strictly increasing",
                     "scale table row " + std::to_string(i));
    }
    ScaleFunction s;
    s.kind = Kind::kTable;
    s.radii = std::move(radii_);
    s.values = std::move(values_);
    s.beta_minus = bm;
    s.beta_plus = bp;
    s.c_psi = c;
    return s;
  }

  // Isotropic evaluation; the vertex argument is part of the interface so a
  // spatially varying table can slot in without touching call sites.
  double operator()([[maybe_unused]] int x, double r) const {
    require(r > 0.0, "r > 0", "Psi radius " + std::to_string(r));
    if (kind == Kind::kPower) return std::pow(r, beta);
    if (r <= radii.front())
      return values.front() * std::pow(r / radii.front(), beta_minus);
    if (r >= radii.back())
      return values.back() * std::pow(r / radii.back(), beta_plus);
    auto it = std::upper_bound(radii.begin(), radii.end(), r);
    std::size_t k = static_cast<std::size_t>(it - radii.begin()) - 1;
    double t = (std::log(r) - std::log(radii[k])) /
               (std::log(radii[k + 1]) - std::log(radii[k]));
    return std::exp((1.0 - t) * std::log(values[k]) + t * std::log(values[k + 1]));
  }

  double of_ball(const Ball& b) const { return (*this)(b.center, b.radius); }

 private:
  static double beta_checked(double b) {
    require(b > 0.0, "beta > 0", "scale exponent " + std::to_string(b));
    return b;
  }
};

struct ScaleRegularityReport {
  double worst_slack = 0.0;  ///< min over samples; negative = violation
  bool pass = true;
  std::string witness;
  int samples = 0;
};

// Verifies the two-sided regularity display over random and dyadic-structured
// samples of (x, y, r, s) with 0 < s <= r <= 2 diam.
inline ScaleRegularityReport check_regularity(const WeightedGraph& g,
                                              const ScaleFunction& psi, int trials,
                                              std::uint64_t seed, double tol = 1e-9) {
  ScaleRegularityReport rep;
  Rng rng(seed);
  std::uniform_int_distribution<int> vx(0, g.n() - 1);
  double dmax = 2.0 * g.diameter();
  std::uniform_real_distribution<double> ur(std::log(dmax) - 12.0, std::log(dmax));

  auto check_one = [&](int x, int y, double r, double s) {
    if (!(s > 0.0 && s <= r && r <= dmax)) return;
    double R = g.dist(x, y);
    double ratio = psi(x, r) / psi(y, s);
    double rvR = std::max(r, R), svR = std::max(s, R);
    double lower = (1.0 / psi.c_psi) * std::pow(svR / r, psi.beta_plus) *
                   std::pow(s / rvR, psi.beta_minus);
    double upper = psi.c_psi * std::pow(r / rvR, psi.beta_minus) *
                   std::pow(rvR / s, psi.beta_plus);
    double slack = std::min(le_slack(lower, ratio), le_slack(ratio, upper));
    ++rep.samples;
    if (slack < rep.worst_slack || rep.witness.empty()) {
      rep.worst_slack = std::min(slack, rep.worst_slack);
      rep.witness = "x=" + std::to_string(x) + " y=" + std::to_string(y) +
                    " r=" + std::to_string(r) + " s=" + std::to_string(s);
    }
    if (slack < -tol) rep.pass = false;
  };

  // dyadic structured sweep
  std::vector<double> grid;
  for (double r = dmax; r > dmax * 1e-4; r *= 0.5) grid.push_back(r);
  for (int t = 0; t < std::max(1, trials / 4); ++t) {
    int x = vx(rng), y = vx(rng);
    for (double r : grid)
      for (double s : grid) check_one(x, y, std::max(r, s), std::min(r, s));
  }
  // random sweep
  for (int t = 0; t < trials; ++t) {
    int x = vx(rng), y = vx(rng);
    double r = std::exp(ur(rng)), s = std::exp(ur(rng));
    check_one(x, y, std::max(r, s), std::min(r, s));
  }
  return rep;
}

}  // namespace pdlab
