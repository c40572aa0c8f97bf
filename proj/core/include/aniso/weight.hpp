#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aniso {

/// Piecewise-constant weight m on [0,1], possibly sign-changing.
///
/// Piece k occupies (breakpoints[k], breakpoints[k+1]) and carries
/// values[k]. Breakpoints are strictly increasing from 0 to 1. Positivity of
/// some piece is not required here: restrictions of an admissible weight to a
/// subinterval may be nonpositive. QuotientProblem enforces admissibility.
class WeightFunction {
 public:
  WeightFunction(std::vector<double> breakpoints, std::vector<double> values);

  static WeightFunction constant(double c);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t pieces() const noexcept { return values_.size(); }
  double width(std::size_t k) const { return breakpoints_[k + 1] - breakpoints_[k]; }

  /// Value at t; at an interior breakpoint the right piece wins.
  double operator()(double t) const;

  bool has_positive_part() const noexcept;
  double integral() const noexcept;

  /// Nonincreasing rearrangement m_*: pieces sorted by value, largest first.
  WeightFunction decreasing_rearrangement() const;
  /// Nondecreasing rearrangement m^*(x) = m_*(1-x).
  WeightFunction increasing_rearrangement() const;

  /// m restricted to [lo, hi] and rescaled onto [0,1].
  WeightFunction restricted(double lo, double hi) const;

  /// Left weight on [0, split], right weight on [split, 1]; both given on [0,1].
  static WeightFunction concatenate(const WeightFunction& left, const WeightFunction& right,
                                    double split);

 private:
  struct Unchecked {};
  WeightFunction(Unchecked, std::vector<double> breakpoints, std::vector<double> values);
  static WeightFunction from_widths(const std::vector<double>& widths,
                                    const std::vector<double>& values);

  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

}  // namespace aniso
