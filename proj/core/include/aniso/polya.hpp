#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "aniso/pwa.hpp"
#include "aniso/rearrange.hpp"
#include "aniso/weight.hpp"

namespace aniso {

/// Relative tolerance for flagging equality, scaled by max(1, lhs).
inline constexpr double kEqualityTol = 1e-9;
/// Relative slack allowed on the "lhs >= rhs" direction of every inequality.
inline constexpr double kInequalitySlack = 1e-10;

/// Which boundary ordering an inequality is taken in: Down when
/// f(0) >= f(1) (compared against u_*), Up when f(0) <= f(1) (against u^*).
enum class Orientation { Down, Up };

std::string_view to_string(Orientation o) noexcept;

/// Orientation implied by the boundary values; ties pick Down.
Orientation orientation_of(const PiecewiseAffine& f) noexcept;

/// Disjoint open subintervals of (0,1).
struct ExcessSet {
  std::vector<Interval> intervals;
  double measure = 0.0;
};

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;                // lhs - rhs as computed
  double excess_term = 0.0;        // refined bound only: weighted energy on the excess set
  double excess_measure = 0.0;
  bool equality = false;           // |gap| <= kEqualityTol * scale
  bool holds = true;               // gap >= -kInequalitySlack * scale
  bool conclusive = true;          // false when a competitor is not admissible
  Monotonicity monotone = Monotonicity::None;
  Orientation orientation = Orientation::Down;
  double identity_residual = 0.0;  // relative residual of the closed-form rhs identity
  std::uint64_t seed = 0;

  double scale() const noexcept { return lhs > 1.0 ? lhs : 1.0; }
  double normalized_gap() const noexcept { return gap / scale(); }
};

/// O_* = {u_* > f(0)} u {u_* < f(1)}; requires f(0) >= f(1).
ExcessSet excess_set_decreasing(const PiecewiseAffine& f);

/// O^* = {u^* > f(1)} u {u^* < f(0)}; requires f(0) <= f(1).
ExcessSet excess_set_increasing(const PiecewiseAffine& f);

/// Refined lower bound for the anisotropic energy:
///   down: b^p |u_*'|_p^p + a^p |u_*'|_p^p on O_*
///   up:   a^p |u^*'|_p^p + b^p |u^*'|_p^p on O^*
/// Orientation follows the boundary values unless forced; a forced
/// orientation must be compatible with them.
InequalityReport refined_bound(const PiecewiseAffine& f, const AnisotropicNorm& norm,
                               std::optional<Orientation> force = std::nullopt);

/// Per-branch weights of a band from the alternating-sign formula
///   gamma_j = (1 - s (-1)^j)/2 a^p + (1 - s (-1)^(j+1))/2 b^p.
/// Throws VerificationFailure if they disagree with the sign-of-slope rule.
std::vector<double> gamma_weights(const Band& band, const AnisotropicNorm& norm);

/// Weight of each branch read off its slope sign: a^p rising, b^p falling.
std::vector<double> gamma_by_slope_sign(const Band& band, const AnisotropicNorm& norm);

/// Band-level bookkeeping check for boundary values (f(0), f(1)):
/// bands outside [min, max] must have an even number of branches with
/// weight sum >= a^p + b^p; bands inside must start with the branch that
/// matches the boundary ordering.
bool band_sum_check(const Band& band, std::pair<double, double> boundary,
                    const AnisotropicNorm& norm);

/// Both sides of the per-band estimate
///   int_{D_i} H^p(u') >= (sum_j gamma_j) int (sum_j |rho_j'|)^(1-p) dlambda.
struct BandEstimate {
  double energy;      // exact energy of f on the band's preimage
  double lower;       // right-hand side of the estimate
  double gap() const noexcept { return energy - lower; }
};
BandEstimate band_estimate(const Band& band, const AnisotropicNorm& norm);

/// Energy of f against the energy of its matching monotone rearrangement.
InequalityReport polya_inequality(const PiecewiseAffine& f, const AnisotropicNorm& norm,
                                  std::optional<Orientation> force = std::nullopt);

/// Energy of f against min(energy(u_*), energy(u^*)) = min(a^p, b^p) K.
InequalityReport min_inequality(const PiecewiseAffine& f, const AnisotropicNorm& norm);

/// Rearranges f separately on (0, kappa) and (kappa, 1); the two halves are
/// joined with a jump at kappa when their values disagree.
PiecewiseAffine split_rearrange(const PiecewiseAffine& f, double kappa, Orientation mode);

/// Compares int m f^p with int m_* (f_*)^p for f >= 0.
InequalityReport hardy_littlewood_check(const PiecewiseAffine& f, const WeightFunction& m,
                                        double p);

}  // namespace aniso
