#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "aniso/weight.hpp"

namespace aniso {

/// Minimum admissible spacing between consecutive input breakpoints.
inline constexpr double kBreakpointGap = 1e-12;

/// Parameters of the anisotropic energy density
///   H^p(xi) = a^p (xi+)^p + b^p (xi-)^p,
/// so increasing pieces are weighted by a and decreasing pieces by b.
class AnisotropicNorm {
 public:
  AnisotropicNorm(double a, double b, double p);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double p() const noexcept { return p_; }
  double a_pow() const noexcept { return a_pow_; }
  double b_pow() const noexcept { return b_pow_; }

  /// H^p evaluated at a slope.
  double density(double slope) const noexcept;

  AnisotropicNorm swapped() const { return {b_, a_, p_}; }

 private:
  double a_;
  double b_;
  double p_;
  double a_pow_;
  double b_pow_;
};

struct Interval {
  double lo;
  double hi;
  double length() const noexcept { return hi - lo; }
};

/// Continuous piecewise-affine function on [0,1], given by its values at
/// strictly increasing breakpoints 0 = t_0 < ... < t_n = 1.
///
/// Piece widths are stored next to the breakpoints. Functions built by
/// rearrangement, reversal or restriction carry widths that are exact
/// level-set measures rather than differences of rounded positions, which
/// keeps energies of u, u_* and u^* consistent to rounding.
///
/// Functions produced by concatenate() may carry a jump, stored as a
/// zero-width piece; such pieces have no slope and no energy.
class PiecewiseAffine {
 public:
  PiecewiseAffine(std::vector<double> breakpoints, std::vector<double> values);

  static PiecewiseAffine constant(double c);

  /// Builds a function from consecutive piece widths (summing to 1 within
  /// 1e-10) and n+1 values. Zero widths are allowed: with equal end values
  /// they are dropped, otherwise they encode a jump.
  static PiecewiseAffine from_widths(std::vector<double> values, std::vector<double> widths);

  /// Left function placed on [0, split], right function on [split, 1].
  /// A value mismatch at split becomes a jump.
  static PiecewiseAffine concatenate(const PiecewiseAffine& left, const PiecewiseAffine& right,
                                     double split);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> widths() const noexcept { return widths_; }
  std::size_t pieces() const noexcept { return widths_.size(); }

  /// Slope of piece i, 0 for a jump piece.
  double slope(std::size_t i) const noexcept;

  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }
  double min_value() const noexcept;
  double max_value() const noexcept;
  bool is_continuous() const noexcept;

  /// Linear interpolation; exact at breakpoints; left limit at a jump.
  double operator()(double t) const;

  /// t -> f(1 - t).
  PiecewiseAffine reversed() const;
  /// s -> f(lo + (hi - lo) s), for 0 <= lo < hi <= 1.
  PiecewiseAffine restricted(double lo, double hi) const;
  /// t -> c f(t).
  PiecewiseAffine scaled(double c) const;

 private:
  struct Unchecked {};
  PiecewiseAffine(Unchecked, std::vector<double> breakpoints, std::vector<double> values,
                  std::vector<double> widths);

  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> widths_;
};

struct SegmentSlope {
  Interval interval;
  double slope;
};

enum class Monotonicity { Increasing, Decreasing, Constant, None };

std::string_view to_string(Monotonicity m) noexcept;

double evaluate(const PiecewiseAffine& f, double t);

/// One entry per piece of positive width.
std::vector<SegmentSlope> derivative_segments(const PiecewiseAffine& f);

/// Integral of H^p(f') over [0,1], summed piece by piece in closed form.
double anisotropic_energy(const PiecewiseAffine& f, const AnisotropicNorm& norm);

/// Integral of |f'|^p over [0,1].
double p_derivative_norm(const PiecewiseAffine& f, double p);

/// Integral of |f'|^p over a union of disjoint subintervals of [0,1].
double p_derivative_norm_on(const PiecewiseAffine& f, double p, std::span<const Interval> set);

/// Slopes within [-tol, tol] count as flat.
Monotonicity is_monotone(const PiecewiseAffine& f, double tol);

/// Integral of m |f|^p for f >= 0 (values down to -1e-12 are read as 0).
/// Throws PreconditionError if f is negative somewhere.
double weighted_p_integral(const PiecewiseAffine& f, const WeightFunction& m, double p);

/// Integral of |f|^p, any sign.
double p_integral(const PiecewiseAffine& f, double p);

/// Measure of {t : f(t) > level}.
double superlevel_measure(const PiecewiseAffine& f, double level);

double max_abs_slope(const PiecewiseAffine& f) noexcept;

}  // namespace aniso
