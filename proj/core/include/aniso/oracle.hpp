#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aniso/pwa.hpp"

// Brute-force cross-checks for the exact routines. Nothing here calls into
// rearrange or the energy functions of pwa: functions are read only through
// their breakpoints and values.

namespace aniso::oracle {

struct OracleConfig {
  std::size_t samples = 100'000;
  std::size_t quadrature_points = 65'536;
  double fd_step = 1e-6;

  /// Throws std::invalid_argument on samples < 1000 or quadrature_points < 256.
  void validate() const;
};

/// Step function on the uniform grid of `cells` cells over [0,1].
class StepFunction {
 public:
  explicit StepFunction(std::vector<double> values);

  std::size_t cells() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(double t) const;

 private:
  std::vector<double> values_;
};

/// f sampled at cell midpoints, sorted in decreasing order.
StepFunction sampled_rearrangement(const PiecewiseAffine& f, const OracleConfig& cfg);

/// sup over [0,1] of |approx - exact| for a continuous nonincreasing exact.
double sup_distance(const StepFunction& approx, const PiecewiseAffine& exact);

/// Midpoint rule on a uniform grid refined by the breakpoints of f; exact for
/// piecewise-affine f up to rounding.
double quadrature_energy(const PiecewiseAffine& f, const AnisotropicNorm& norm,
                         const OracleConfig& cfg);

/// Objective returning nullopt where it is not defined.
using Objective = std::function<std::optional<double>(std::span<const double>)>;

/// Central differences; a component whose probe fails is NaN.
std::vector<double> fd_gradient(const Objective& objective, std::span<const double> point,
                                const OracleConfig& cfg);

}  // namespace aniso::oracle
