#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aniso/pwa.hpp"

namespace aniso {

/// Critical values closer than this are merged into one level.
inline constexpr double kLevelMergeTol = 1e-12;

/// One solution t = rho of f(t) = lambda inside a band.
struct Branch {
  std::size_t segment_index;
  double rho;
  double slope;
  int sign;
};

/// Level interval (lo, hi) between consecutive critical values, on which the
/// number and the signs of preimage branches do not change.
struct Band {
  double lo;
  double hi;
  std::vector<Branch> branches;
  int orientation;                 // sign of the first branch
  double preimage_measure;         // |D_i| = sum_j height / |slope_j|
  double rearranged_measure;       // |E_i| = height * sum_j 1 / |slope_j|

  std::size_t count() const noexcept { return branches.size(); }
  double height() const noexcept { return hi - lo; }
  /// sum_j 1/|slope_j|, the magnitude of the level-set velocity sum.
  double inverse_slope_sum() const noexcept;
};

/// mu(lambda) = |{t : f(t) > lambda}|, right-continuous and nonincreasing.
///
/// Knots are sorted by level; a repeated level encodes a jump, with the
/// left limit first and the value at the level second.
class DistributionFunction {
 public:
  struct Knot {
    double level;
    double measure;
  };

  explicit DistributionFunction(std::vector<Knot> knots);

  std::span<const Knot> knots() const noexcept { return knots_; }
  double min_level() const noexcept { return knots_.front().level; }
  double max_level() const noexcept { return knots_.back().level; }

  double operator()(double level) const;

 private:
  std::vector<Knot> knots_;
};

/// Sorted distinct breakpoint values, merged at kLevelMergeTol.
std::vector<double> critical_values(const PiecewiseAffine& f);

DistributionFunction distribution(const PiecewiseAffine& f);

/// All crossings of the level, ordered by position. Throws PreconditionError
/// when lambda lies within kLevelMergeTol of a critical value.
std::vector<Branch> level_preimages(const PiecewiseAffine& f, double lambda);

/// u_*: the nonincreasing function equimeasurable with f.
PiecewiseAffine decreasing_rearrangement(const PiecewiseAffine& f);

/// u^*(x) = u_*(1 - x).
PiecewiseAffine increasing_rearrangement(const PiecewiseAffine& f);

/// One band per pair of consecutive critical values crossed by f.
std::vector<Band> band_decomposition(const PiecewiseAffine& f);

/// Total width of the flat pieces of f.
double plateau_measure(const PiecewiseAffine& f);

}  // namespace aniso
