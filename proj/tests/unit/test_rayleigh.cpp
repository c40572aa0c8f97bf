#include <doctest.h>

#include <cmath>
#include <numeric>

#include "aniso/errors.hpp"
#include "aniso/oracle.hpp"
#include "aniso/random.hpp"
#include "aniso/rayleigh.hpp"
#include "support.hpp"

using namespace aniso;
using doctest::Approx;

namespace {

QuotientProblem problem(double a, double b, double p, WeightFunction m, double kappa,
                        std::size_t grid = 32) {
  return QuotientProblem(AnisotropicNorm(a, b, p), std::move(m), kappa, grid);
}

double rel_error(const std::vector<double>& x, const std::vector<double>& y) {
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    diff += (x[i] - y[i]) * (x[i] - y[i]);
    norm += y[i] * y[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300);
}

}  // namespace

TEST_CASE("problem validation") {
  const auto m = fixtures::plus_minus();
  CHECK_THROWS_AS(problem(1, 1, 2, m, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(problem(1, 1, 2, m, 0.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(problem(1, 1, 2, WeightFunction::constant(-1.0), 0.0), InfeasibleError);
  CHECK_THROWS_AS(problem(1, 1, 2, WeightFunction({0, 0.5, 1}, {0.0, -2.0}), 0.0),
                  InfeasibleError);
  CHECK_NOTHROW(problem(1, 1, 2, m, 0.0, 8));
}

TEST_CASE("quotient examples") {
  const auto one = WeightFunction::constant(1.0);
  const auto T = fixtures::tent();
  CHECK(fixtures::midpoint_weighted(T, one, 2.0, 200000) == Approx(1.0 / 3.0).epsilon(1e-8));
  CHECK(rayleigh_quotient(T, problem(1, 1, 2, one, 0.0)) == Approx(12.0).epsilon(1e-14));
  CHECK(rayleigh_quotient(PiecewiseAffine::constant(0.8), problem(1, 1, 2, one, 0.0)) == 0.0);
  CHECK(rayleigh_quotient(T, problem(1, 1, 2, one, 1.0)) == Approx(12.0).epsilon(1e-14));
  // the boundary term counts when phi does not vanish there
  CHECK(rayleigh_quotient(PiecewiseAffine::constant(1.0), problem(1, 1, 2, one, 3.0)) ==
        Approx(6.0).epsilon(1e-14));

  CHECK_THROWS_AS(rayleigh_quotient(T, problem(1, 1, 2, fixtures::plus_minus(), 0.0)),
                  InfeasibleError);
  CHECK_THROWS_AS(rayleigh_quotient(PiecewiseAffine({0, 1}, {1, -1}), problem(1, 1, 2, one, 0.0)),
                  PreconditionError);
}

TEST_CASE("first global maximum") {
  CHECK(first_global_max(fixtures::tent()) == 0.5);
  CHECK(first_global_max(PiecewiseAffine({0, 0.25, 0.75, 1}, {0, 1, 1, 0})) == 0.25);
  CHECK(first_global_max(fixtures::line_down()) == 0.0);
  CHECK(first_global_max(fixtures::line_up()) == 1.0);
}

TEST_CASE("structure classification") {
  CHECK(classify_structure(fixtures::line_up()).kind == StructureKind::Increasing);
  CHECK(classify_structure(fixtures::line_down()).kind == StructureKind::Decreasing);
  CHECK(classify_structure(PiecewiseAffine::constant(2.0)).kind == StructureKind::Constant);
  const auto t = classify_structure(fixtures::tent());
  CHECK(t.kind == StructureKind::Unimodal);
  CHECK(t.alpha == 0.5);
  CHECK(to_string(t) == "unimodal(0.5)");
  const PiecewiseAffine w({0, 0.25, 0.5, 0.75, 1}, {0, 1, 0, 1, 0});
  CHECK(classify_structure(w).kind == StructureKind::Other);
  // a dip far below the slope tolerance is ignored
  const PiecewiseAffine nearly({0, 0.5, 0.6, 1}, {0, 1, 1 - 1e-9, 0.5});
  CHECK(classify_structure(nearly).kind == StructureKind::Unimodal);
  CHECK(classify_structure(fixtures::line_up()).is_monotone());
}

TEST_CASE("unimodal competitor") {
  const auto one = WeightFunction::constant(1.0);
  const auto c = unimodal_competitor(fixtures::tent(), one, 0.5);
  for (double t : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    CHECK(evaluate(c.phi, t) == Approx(evaluate(fixtures::tent(), t)).epsilon(1e-14));
  }
  const PiecewiseAffine phi({0, 0.25, 0.5, 1}, {0, 0.5, 1, 0});
  const auto d = unimodal_competitor(phi, one, 0.5);
  for (double t : {0.1, 0.25, 0.5, 0.75}) {
    CHECK(evaluate(d.phi, t) == Approx(evaluate(phi, t)).epsilon(1e-14));
  }

  const PiecewiseAffine wavy({0, 0.2, 0.35, 0.5, 0.7, 0.85, 1}, {0.5, 0.1, 0.8, 1.0, 0.2, 0.6, 0.3});
  const double alpha = first_global_max(wavy);
  CHECK(classify_structure(wavy).kind == StructureKind::Other);
  const auto r = unimodal_competitor(wavy, fixtures::plus_minus(), alpha);
  const auto s = classify_structure(r.phi);
  CHECK(s.kind == StructureKind::Unimodal);
  CHECK(s.alpha == Approx(alpha).epsilon(1e-14));
  CHECK(is_monotone(r.phi.restricted(0.0, alpha), 1e-12) == Monotonicity::Increasing);
  CHECK(is_monotone(r.phi.restricted(alpha, 1.0), 1e-12) == Monotonicity::Decreasing);
  CHECK(r.weight.integral() == Approx(fixtures::plus_minus().integral()).epsilon(1e-14));

  CHECK_THROWS_AS(unimodal_competitor(wavy, fixtures::plus_minus(), 0.0), PreconditionError);
}

TEST_CASE("competitor examples") {
  const auto mdec = WeightFunction({0, 0.3, 1}, {1.0, -0.5});
  const auto r = competitor_improves(PiecewiseAffine({0, 0.4, 1}, {1, 0.7, 0.2}),
                                     problem(2, 1, 2, mdec, 0.0), CompetitorMode::Monotone);
  CHECK(r.conclusive);
  CHECK(r.equality);

  for (double kappa : {0.0, 0.5, 5.0}) {
    const auto t = competitor_improves(fixtures::tent(),
                                       problem(1, 2, 2, WeightFunction::constant(1.0), kappa));
    CHECK(t.equality);
    CHECK(t.holds);
  }
  CHECK_THROWS_AS(competitor_improves(fixtures::tent(),
                                      problem(1, 2, 2, WeightFunction::constant(1.0), 1.0),
                                      CompetitorMode::Monotone),
                  PreconditionError);
}

TEST_CASE("discrete quotient matches the exact quotient") {
  Rng rng(501);
  std::uniform_real_distribution<double> val(0.05, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto n = random_norm(rng);
    const auto prob = QuotientProblem(n, random_weight(rng, true), i % 2 ? 0.0 : 2.0, 16);
    const DiscreteQuotient dq(prob);
    std::vector<double> x(dq.nodes());
    for (double& v : x) v = val(rng);
    const double den = dq.denominator(x);
    if (!(den > 0.0)) continue;
    const auto phi = dq.to_function(x);
    CHECK(dq.numerator(x) == Approx(anisotropic_energy(phi, n) +
                                    prob.kappa() * (std::pow(x.front(), n.p()) +
                                                    std::pow(x.back(), n.p())))
                                 .epsilon(1e-12));
    CHECK(den == Approx(weighted_p_integral(phi, prob.weight(), n.p())).epsilon(1e-10));
    CHECK(dq.value(x) == Approx(rayleigh_quotient(phi, prob)).epsilon(1e-10));
  }
}

TEST_CASE("analytic gradient agrees with finite differences") {
  Rng rng(502);
  std::uniform_real_distribution<double> val(0.1, 1.1);
  const oracle::OracleConfig cfg;
  int checked = 0;
  while (checked < 40) {
    const auto prob = QuotientProblem(random_norm(rng), random_weight(rng, true),
                                      checked % 2 ? 0.0 : 3.0, 32);
    const DiscreteQuotient dq(prob);
    std::vector<double> x(dq.nodes());
    for (double& v : x) v = val(rng);
    if (!(dq.denominator(x) > 0.0)) continue;
    std::vector<double> g(x.size());
    dq.value_and_gradient(x, g);
    const auto fd = oracle::fd_gradient(
        [&](std::span<const double> y) -> std::optional<double> {
          if (!(dq.denominator(y) > 0.0)) return std::nullopt;
          return dq.value(y);
        },
        x, cfg);
    CHECK(rel_error(g, fd) <= 1e-5);
    ++checked;
  }
}

TEST_CASE("scale invariance and numerator split") {
  Rng rng(503);
  for (int i = 0; i < 300; ++i) {
    const auto n = random_norm(rng);
    const auto phi = random_function(rng);
    const auto m = random_weight(rng, true);
    if (!(weighted_p_integral(phi, m, n.p()) > 0.0)) continue;
    const QuotientProblem prob(n, m, i % 2 ? 0.0 : 1.5, 8);
    const double c = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    const double q = rayleigh_quotient(phi, prob);
    CHECK(std::abs(rayleigh_quotient(phi.scaled(c), prob) - q) <= 1e-12 * std::max(1.0, q));

    const double alpha = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const double split = anisotropic_energy(phi.restricted(0.0, alpha), n) * std::pow(alpha, 1.0 - n.p()) +
                         anisotropic_energy(phi.restricted(alpha, 1.0), n) *
                             std::pow(1.0 - alpha, 1.0 - n.p());
    const double whole = anisotropic_energy(phi, n);
    CHECK(std::abs(split - whole) <= 1e-12 * std::max(1.0, whole));
  }
}

TEST_CASE("competitor never loses on random admissible pairs") {
  Rng rng(504);
  int admissible = 0;
  int strict = 0;
  int trials = 0;
  while (trials < 500) {
    const auto n = random_norm(rng);
    const auto phi = random_function(rng);
    const auto m = random_weight(rng, true);
    if (!(weighted_p_integral(phi, m, n.p()) > 0.0)) continue;
    ++trials;
    const double kappa = trials % 2 ? 0.0 : 4.0;
    const QuotientProblem prob(n, m, kappa, 8);
    const auto r = competitor_improves(phi, prob);
    if (!r.conclusive) continue;
    ++admissible;
    CHECK(r.holds);
    if (r.gap > 1e-9 * r.scale()) ++strict;
    if (kappa == 0.0) {
      const auto mono = competitor_improves(phi, prob, CompetitorMode::Monotone);
      if (mono.conclusive) CHECK(mono.holds);
    }
  }
  CHECK(admissible > 250);
  CHECK(strict * 2 > admissible);
}

TEST_CASE("minimizer on a positive weight finds constants") {
  const auto prob = problem(1, 1, 2, WeightFunction::constant(1.0), 0.0, 32);
  const auto r = minimize_quotient(prob, 7);
  CHECK(r.lambda_plus <= 1e-8);
  CHECK(r.structure.kind == StructureKind::Constant);
  CHECK(weighted_p_integral(r.phi, prob.weight(), 2.0) == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("minimizer report invariants and determinism") {
  const auto prob = problem(1, 2, 2, fixtures::plus_minus(), 10.0, 32);
  MinimizeOptions opt;
  const auto r = minimize_quotient(prob, 3, opt);
  CHECK(r.seed == 3);
  CHECK(std::abs(r.lambda_plus - rayleigh_quotient(r.phi, prob)) <= 1e-10 * r.lambda_plus);
  CHECK(r.phi.min_value() >= -1e-12);
  CHECK(weighted_p_integral(r.phi, prob.weight(), 2.0) == Approx(1.0).epsilon(1e-9));
  CHECK(r.structure.kind == StructureKind::Unimodal);
  CHECK(r.structure.alpha > 0.05);
  CHECK(r.structure.alpha < 0.95);

  opt.threads = 3;
  const auto again = minimize_quotient(prob, 3, opt);
  CHECK(again.lambda_plus == r.lambda_plus);
  CHECK(again.start_index == r.start_index);
  CHECK(std::equal(again.phi.values().begin(), again.phi.values().end(), r.phi.values().begin()));
}

TEST_CASE("minimizer without boundary term prefers monotone profiles") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}, std::pair{2.0, 1.0}}) {
    const auto prob = problem(a, b, 2, WeightFunction({0, 0.5, 1}, {1.0, -2.0}), 0.0, 32);
    const auto r = minimize_quotient(prob, 11);
    CHECK(r.structure.is_monotone());
    CHECK(r.lambda_plus > 0.0);
  }
}

TEST_CASE("minimizer rejects infeasible problems") {
  CHECK_THROWS_AS(minimize_quotient(problem(1, 1, 2, WeightFunction::constant(0.0), 0.0), 1),
                  InfeasibleError);
}
