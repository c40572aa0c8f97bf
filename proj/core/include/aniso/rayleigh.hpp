#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aniso/polya.hpp"
#include "aniso/pwa.hpp"
#include "aniso/weight.hpp"

namespace aniso {

/// Anisotropic Rayleigh quotient with indefinite weight and a Robin-type
/// boundary term:
///   R(phi) = (int H^p(phi') + kappa (phi(0)^p + phi(1)^p)) / int m phi^p.
class QuotientProblem {
 public:
  /// Throws InfeasibleError when the weight has no positive part.
  QuotientProblem(AnisotropicNorm norm, WeightFunction weight, double kappa,
                  std::size_t grid_size);

  const AnisotropicNorm& norm() const noexcept { return norm_; }
  const WeightFunction& weight() const noexcept { return weight_; }
  double kappa() const noexcept { return kappa_; }
  std::size_t grid_size() const noexcept { return grid_size_; }

 private:
  AnisotropicNorm norm_;
  WeightFunction weight_;
  double kappa_;
  std::size_t grid_size_;
};

enum class StructureKind { Increasing, Decreasing, Constant, Unimodal, Other };

struct Structure {
  StructureKind kind = StructureKind::Other;
  double alpha = 0.0;  // first global maximum, meaningful for Unimodal

  bool is_monotone() const noexcept {
    return kind == StructureKind::Increasing || kind == StructureKind::Decreasing ||
           kind == StructureKind::Constant;
  }
};

std::string to_string(const Structure& s);

/// Shape of phi with slopes below relative_tol * max|slope| treated as flat.
/// Unimodal means a nonempty rising part followed by a nonempty falling part.
Structure classify_structure(const PiecewiseAffine& phi, double relative_tol = 1e-6);

/// Throws InfeasibleError if int m phi^p <= 0, PreconditionError if phi < 0.
double rayleigh_quotient(const PiecewiseAffine& phi, const QuotientProblem& prob);

/// Smallest t at which phi attains its maximum.
double first_global_max(const PiecewiseAffine& phi);

struct Competitor {
  PiecewiseAffine phi;
  WeightFunction weight;
};

/// phi^R = increasing rearrangement of phi on (0, alpha) followed by the
/// decreasing rearrangement of phi on (alpha, 1); m^R likewise from m.
Competitor unimodal_competitor(const PiecewiseAffine& phi, const WeightFunction& m,
                               double alpha);

enum class CompetitorMode {
  Unimodal,  // split at the first global maximum
  Monotone,  // whole-interval rearrangement picked by the sign of a - b; kappa must be 0
};

/// lhs = R(phi, m), rhs = R(competitor); `holds` when the competitor is no
/// worse. An inadmissible competitor denominator yields conclusive = false.
InequalityReport competitor_improves(const PiecewiseAffine& phi, const QuotientProblem& prob,
                                     CompetitorMode mode = CompetitorMode::Unimodal);

/// The quotient restricted to nodal values on a uniform grid.
class DiscreteQuotient {
 public:
  explicit DiscreteQuotient(const QuotientProblem& prob);

  std::size_t nodes() const noexcept { return grid_ + 1; }

  double numerator(std::span<const double> x) const;
  double denominator(std::span<const double> x) const;
  double value(std::span<const double> x) const;

  /// Returns the quotient and writes its gradient into `grad`.
  double value_and_gradient(std::span<const double> x, std::span<double> grad) const;

  PiecewiseAffine to_function(std::span<const double> x) const;

 private:
  struct Slice {
    std::size_t cell;
    double weight;
    double theta0;
    double theta1;
  };

  AnisotropicNorm norm_;
  double kappa_;
  std::size_t grid_;
  double h_;
  std::vector<Slice> slices_;
};

struct MinimizeOptions {
  std::size_t max_iterations = 50'000;
  std::size_t window = 50;
  double tolerance = 1e-10;
  unsigned threads = 1;
};

struct MinimizerReport {
  PiecewiseAffine phi;
  double lambda_plus;
  Structure structure;
  std::size_t iterations;
  bool converged;
  std::size_t start_index;
  std::uint64_t seed;
};

/// Multistart projected descent over phi >= 0 with int m phi^p = 1.
/// Throws InfeasibleError if no start has a positive denominator.
MinimizerReport minimize_quotient(const QuotientProblem& prob, std::uint64_t seed,
                                  const MinimizeOptions& options = {});

}  // namespace aniso
