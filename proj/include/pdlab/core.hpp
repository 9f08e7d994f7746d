#pragma once
// Shared small pieces: error types, RNG plumbing, p-power helpers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdlab {

using VertexFunction = std::vector<double>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an operation's stated precondition does not hold; carries the
// name of the violated hypothesis so callers can surface it.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& hypothesis, const std::string& detail)
      : Error("precondition violated [" + hypothesis + "]: " + detail),
        hypothesis_(hypothesis) {}
  const std::string& hypothesis() const { return hypothesis_; }

 private:
  std::string hypothesis_;
};

inline void require(bool ok, const char* hypothesis, const std::string& detail) {
  if (!ok) throw PreconditionError(hypothesis, detail);
}

using Rng = std::mt19937_64;

// |t|^p for p > 1.  pow() is exact enough here; the hot loops cache p.
inline double pow_abs(double t, double p) { return std::pow(std::abs(t), p); }

// sign(t)·|t|^{p-1}, the derivative of |t|^p / p.  Continuous for p > 1.
inline double dpow_abs(double t, double p) {
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), p - 1.0), t);
}

constexpr double kTiny = 1e-300;

inline double relative_gap(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-30});
  return std::abs(a - b) / scale;
}

// Slack of "lhs <= rhs", normalized so tolerances are scale-free:
// negative values mean violation.
inline double le_slack(double lhs, double rhs) {
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return (rhs - lhs) / scale;
}

}  // namespace pdlab
