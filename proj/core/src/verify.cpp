#include "aniso/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "aniso/errors.hpp"
#include "aniso/parallel.hpp"
#include "aniso/random.hpp"
#include "aniso/rayleigh.hpp"
#include "aniso/rearrange.hpp"

namespace aniso {

namespace {

constexpr std::array<Suite, 6> kSuites = {Suite::Polya1, Suite::Polya2,          Suite::Polya3,
                                          Suite::Bands,  Suite::HardyLittlewood, Suite::Rayleigh};

// Tolerance for identities that hold up to rounding.
constexpr double kIdentityTol = 1e-12;

// Roughly 15% monotone inputs and 10% with plateaus; the rest are generic.
PiecewiseAffine draw_function(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double kind = u(rng);
  FunctionOptions opt;
  opt.monotone = kind < 0.15;
  opt.plateaus = kind >= 0.15 && kind < 0.25;
  return random_function(rng, opt);
}

void fill(TrialRow& row, const InequalityReport& r) {
  row.lhs = r.lhs;
  row.rhs = r.rhs;
  row.gap = r.gap;
  row.excess_measure = r.excess_measure;
  row.monotone = r.monotone;
  row.orientation = r.orientation;
  row.conclusive = r.conclusive;
}

void flag(TrialRow& row, std::string_view what) {
  if (!row.violation.empty()) row.violation += "; ";
  row.violation += what;
}

double scale_of(double lhs) { return std::max(1.0, lhs); }

void polya1(TrialRow& row, Rng& rng) {
  const AnisotropicNorm norm = random_norm(rng);
  const PiecewiseAffine f = draw_function(rng);
  const InequalityReport r = refined_bound(f, norm);
  fill(row, r);
  if (!r.holds) flag(row, "refined bound violated");

  for (const Band& band : band_decomposition(f)) {
    if (band.count() < 2) continue;
    if (!(band_estimate(band, norm).gap() > 0.0)) flag(row, "multi-branch band estimate not strict");
  }
  const InequalityReport plain = polya_inequality(f, norm, r.orientation);
  if (r.rhs < plain.rhs - kIdentityTol * scale_of(r.lhs)) {
    flag(row, "refined rhs below plain rhs");
  }
}

void polya2(TrialRow& row, Rng& rng) {
  const AnisotropicNorm norm = random_norm(rng);
  const PiecewiseAffine f = draw_function(rng);
  const InequalityReport r = polya_inequality(f, norm);
  fill(row, r);
  const double tight = kIdentityTol * r.scale();
  if (!r.holds) flag(row, "rearrangement inequality violated");
  if (r.identity_residual > kIdentityTol) flag(row, "rhs differs from boundary weight times K");
  if (std::abs(r.gap) <= tight && r.monotone == Monotonicity::None) {
    flag(row, "equality for a non-monotone input");
  }
  if (is_monotone(f, 0.0) != Monotonicity::None && r.gap > tight) {
    flag(row, "monotone input without equality");
  }
}

void polya3(TrialRow& row, Rng& rng) {
  const AnisotropicNorm norm = random_norm(rng);
  const PiecewiseAffine f = draw_function(rng);
  const InequalityReport r = min_inequality(f, norm);
  fill(row, r);
  if (!r.holds) flag(row, "min inequality violated");
  if (r.identity_residual > kIdentityTol) flag(row, "rhs differs from min(a^p, b^p) K");
  if (r.equality && r.monotone == Monotonicity::None) flag(row, "equality for a non-monotone input");
}

void bands(TrialRow& row, Rng& rng) {
  const AnisotropicNorm norm = random_norm(rng);
  const PiecewiseAffine f = draw_function(rng);
  const std::pair<double, double> boundary{f.front(), f.back()};
  row.lhs = anisotropic_energy(f, norm);
  row.monotone = is_monotone(f, 1e-9);
  row.orientation = orientation_of(f);
  for (const Band& band : band_decomposition(f)) {
    try {
      gamma_weights(band, norm);
    } catch (const VerificationFailure&) {
      flag(row, "alternating weights disagree with the slope-sign rule");
    }
    if (!band_sum_check(band, boundary, norm)) flag(row, "band bookkeeping failed");
    row.rhs += band_estimate(band, norm).lower;
  }
  row.gap = row.lhs - row.rhs;
  if (row.gap < -kInequalitySlack * scale_of(row.lhs)) flag(row, "band lower bounds exceed energy");
}

void hardy_littlewood(TrialRow& row, Rng& rng) {
  const double p = random_norm(rng).p();
  const PiecewiseAffine f = draw_function(rng);
  std::bernoulli_distribution coin(0.5);
  const WeightFunction m = random_weight(rng, coin(rng));
  const InequalityReport r = hardy_littlewood_check(f, m, p);
  fill(row, r);
  if (!r.holds) flag(row, "rearranged weighted integral decreased");
}

void rayleigh(TrialRow& row, Rng& rng) {
  const AnisotropicNorm norm = random_norm(rng);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> kappa_draw(0.0, 10.0);
  const double kappa = coin(rng) ? 0.0 : kappa_draw(rng);

  // Redraw until the original quotient is defined; a few hundred attempts
  // always suffice in practice since every weight has a positive piece.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const PiecewiseAffine phi = draw_function(rng);
    const WeightFunction m = random_weight(rng, true);
    if (!(weighted_p_integral(phi, m, norm.p()) > 0.0)) continue;
    const QuotientProblem prob(norm, m, kappa, 8);

    const InequalityReport r = competitor_improves(phi, prob, CompetitorMode::Unimodal);
    fill(row, r);
    if (r.conclusive && !r.holds) flag(row, "unimodal competitor has a larger quotient");
    if (kappa == 0.0) {
      const InequalityReport mono = competitor_improves(phi, prob, CompetitorMode::Monotone);
      if (mono.conclusive && !mono.holds) flag(row, "monotone competitor has a larger quotient");
    }
    return;
  }
  row.conclusive = false;
}

}  // namespace

std::string_view to_string(Suite s) noexcept {
  switch (s) {
    case Suite::Polya1: return "polya1";
    case Suite::Polya2: return "polya2";
    case Suite::Polya3: return "polya3";
    case Suite::Bands: return "bands";
    case Suite::HardyLittlewood: return "hl";
    case Suite::Rayleigh: return "rayleigh";
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name) noexcept {
  for (Suite s : kSuites) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::span<const Suite> all_suites() noexcept { return kSuites; }

TrialRow run_trial(Suite suite, std::size_t trial, std::uint64_t trial_seed) {
  TrialRow row;
  row.trial = trial;
  row.seed = trial_seed;
  Rng rng(trial_seed);
  try {
    switch (suite) {
      case Suite::Polya1: polya1(row, rng); break;
      case Suite::Polya2: polya2(row, rng); break;
      case Suite::Polya3: polya3(row, rng); break;
      case Suite::Bands: bands(row, rng); break;
      case Suite::HardyLittlewood: hardy_littlewood(row, rng); break;
      case Suite::Rayleigh: rayleigh(row, rng); break;
    }
  } catch (const std::exception& e) {
    flag(row, e.what());
  }
  return row;
}

BatteryResult run_battery(Suite suite, std::size_t trials, std::uint64_t seed,
                          unsigned threads) {
  BatteryResult out;
  out.suite = suite;
  out.trials = trials;
  out.rows.resize(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    out.rows[i] = run_trial(suite, i, derive_seed(seed, i));
  });

  out.worst_gap = std::numeric_limits<double>::infinity();
  for (const TrialRow& row : out.rows) {
    if (!row.violation.empty()) ++out.violations;
    if (!row.conclusive) {
      ++out.inconclusive;
      continue;
    }
    out.worst_gap = std::min(out.worst_gap, row.gap / scale_of(row.lhs));
  }
  if (!std::isfinite(out.worst_gap)) out.worst_gap = 0.0;
  return out;
}

}  // namespace aniso
