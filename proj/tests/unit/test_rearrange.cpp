#include <doctest.h>

#include <cmath>

#include "aniso/errors.hpp"
#include "aniso/oracle.hpp"
#include "aniso/random.hpp"
#include "aniso/rearrange.hpp"
#include "support.hpp"

using namespace aniso;
using doctest::Approx;

namespace {

bool same_function(const PiecewiseAffine& f, const PiecewiseAffine& g, double tol) {
  // compare on the union of breakpoints
  std::vector<double> ts(f.breakpoints().begin(), f.breakpoints().end());
  ts.insert(ts.end(), g.breakpoints().begin(), g.breakpoints().end());
  for (double t : ts) {
    if (std::abs(fixtures::interp(f, t) - fixtures::interp(g, t)) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("critical values") {
  CHECK(critical_values(fixtures::tent()) == std::vector<double>{0.0, 1.0});
  CHECK(critical_values(fixtures::s_shape()) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(critical_values(PiecewiseAffine::constant(0.3)) == std::vector<double>{0.3});
  // merged within 1e-12, the smaller value represents the cluster
  const PiecewiseAffine f({0.0, 0.5, 1.0}, {0.0, 1.0, 1e-13});
  CHECK(critical_values(f) == std::vector<double>{0.0, 1.0});
}

TEST_CASE("distribution function") {
  const auto mu = distribution(fixtures::tent());
  for (double l : {0.1, 0.5, 0.9}) {
    CHECK(mu(l) == Approx(1.0 - l).epsilon(1e-14));
    CHECK(fixtures::sampled_superlevel(fixtures::tent(), l, 100000) == Approx(1.0 - l).epsilon(1e-4));
  }
  const auto ms = distribution(fixtures::s_shape());
  CHECK(ms(0.25) == Approx(1.0 - 0.125).epsilon(1e-14));
  CHECK(ms(0.75) == Approx(1.5 * 0.25).epsilon(1e-14));
  CHECK(fixtures::sampled_superlevel(fixtures::s_shape(), 0.25, 100000) ==
        Approx(0.875).epsilon(1e-4));
  CHECK(fixtures::sampled_superlevel(fixtures::s_shape(), 0.75, 100000) ==
        Approx(0.375).epsilon(1e-4));

  const auto mc = distribution(PiecewiseAffine::constant(0.4));
  CHECK(mc(0.4) == 0.0);
  CHECK(mc(0.39) == 1.0);
  CHECK(mc(0.5) == 0.0);

  // a plateau is a jump in mu
  const auto mp = distribution(PiecewiseAffine({0.0, 0.3, 0.6, 1.0}, {1.0, 0.5, 0.5, 0.0}));
  CHECK(mp(0.5) == Approx(0.3).epsilon(1e-14));
  CHECK(mp(0.5 - 1e-9) == Approx(0.6).epsilon(1e-6));

  CHECK_THROWS_AS(DistributionFunction({{0.5, 0.0}, {0.2, 1.0}}), std::invalid_argument);
}

TEST_CASE("level preimages") {
  const auto t = level_preimages(fixtures::tent(), 0.5);
  REQUIRE(t.size() == 2);
  CHECK(t[0].rho == Approx(0.25).epsilon(1e-15));
  CHECK(t[0].slope == 2.0);
  CHECK(t[0].sign == 1);
  CHECK(t[1].rho == Approx(0.75).epsilon(1e-15));
  CHECK(t[1].slope == -2.0);
  CHECK(t[1].sign == -1);

  const auto s = level_preimages(fixtures::s_shape(), 0.25);
  REQUIRE(s.size() == 1);
  CHECK(s[0].rho == Approx(0.875).epsilon(1e-15));
  CHECK(s[0].slope == -2.0);

  const auto u = level_preimages(fixtures::line_up(), 0.4);
  REQUIRE(u.size() == 1);
  CHECK(u[0].rho == Approx(0.4).epsilon(1e-15));

  CHECK_THROWS_AS(level_preimages(fixtures::s_shape(), 0.5), PreconditionError);
  CHECK(level_preimages(fixtures::tent(), 2.0).empty());
}

TEST_CASE("decreasing rearrangement examples") {
  const oracle::OracleConfig cfg;
  const auto t = decreasing_rearrangement(fixtures::tent());
  CHECK(same_function(t, fixtures::line_down(), 1e-15));
  CHECK(oracle::sup_distance(oracle::sampled_rearrangement(fixtures::tent(), cfg), t) <= 2e-5);

  const auto s = decreasing_rearrangement(fixtures::s_shape());
  const PiecewiseAffine expected({0.0, 0.75, 1.0}, {1.0, 0.5, 0.0});
  CHECK(same_function(s, expected, 1e-15));
  CHECK(oracle::sup_distance(oracle::sampled_rearrangement(fixtures::s_shape(), cfg), expected) <=
        3e-5);

  CHECK(same_function(decreasing_rearrangement(fixtures::line_down()), fixtures::line_down(), 0.0));
}

TEST_CASE("increasing rearrangement examples") {
  CHECK(same_function(increasing_rearrangement(fixtures::tent()), fixtures::line_up(), 1e-15));
  CHECK(same_function(increasing_rearrangement(fixtures::line_up()), fixtures::line_up(), 0.0));
  const auto c = increasing_rearrangement(PiecewiseAffine::constant(0.7));
  CHECK(c.min_value() == 0.7);
  CHECK(c.max_value() == 0.7);
}

TEST_CASE("plateaus survive rearrangement") {
  const PiecewiseAffine f({0.0, 0.2, 0.5, 1.0}, {0.0, 0.6, 0.6, 0.0});
  const auto u = decreasing_rearrangement(f);
  CHECK(plateau_measure(f) == Approx(0.3).epsilon(1e-15));
  CHECK(plateau_measure(u) == Approx(0.3).epsilon(1e-14));
  CHECK(u.front() == 0.6);
  CHECK(u.back() == 0.0);
}

TEST_CASE("band decomposition examples") {
  const auto t = band_decomposition(fixtures::tent());
  REQUIRE(t.size() == 1);
  CHECK(t[0].count() == 2);
  CHECK(t[0].orientation == 1);
  CHECK(t[0].preimage_measure == Approx(1.0).epsilon(1e-15));

  const auto s = band_decomposition(fixtures::s_shape());
  REQUIRE(s.size() == 2);
  CHECK(s[0].lo == 0.0);
  CHECK(s[0].hi == 0.5);
  CHECK(s[0].count() == 1);
  CHECK(s[0].orientation == -1);
  CHECK(s[1].count() == 2);
  CHECK(s[1].orientation == 1);
  CHECK(s[1].rearranged_measure == Approx(0.75).epsilon(1e-15));

  const auto u = band_decomposition(fixtures::line_up());
  REQUIRE(u.size() == 1);
  CHECK(u[0].count() == 1);
  CHECK(u[0].orientation == 1);

  CHECK(band_decomposition(PiecewiseAffine::constant(1.0)).empty());
}

// Properties over random inputs.

TEST_CASE("equimeasurability and norm preservation") {
  Rng rng(301);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    FunctionOptions opt;
    opt.plateaus = i % 4 == 0;
    opt.lo = -1.0;
    const auto f = random_function(rng, opt);
    const auto u = decreasing_rearrangement(f);
    for (int k = 0; k < 100; ++k) {
      const double level = f.min_value() + (f.max_value() - f.min_value()) * unit(rng);
      CHECK(std::abs(superlevel_measure(u, level) - superlevel_measure(f, level)) <= 1e-10);
    }
    for (double p : {1.5, 2.0, 3.0}) {
      const double a = p_integral(u, p);
      CHECK(std::abs(a - p_integral(f, p)) <= 1e-10 * std::max(1.0, a));
    }
  }
}

TEST_CASE("reflection, monotonicity and idempotence") {
  Rng rng(302);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    FunctionOptions opt;
    opt.plateaus = i % 3 == 0;
    const auto f = random_function(rng, opt);
    const auto down = decreasing_rearrangement(f);
    const auto up = increasing_rearrangement(f);
    for (int k = 0; k < 100; ++k) {
      const double x = unit(rng);
      CHECK(std::abs(evaluate(up, x) - evaluate(down, 1.0 - x)) <= 1e-12);
    }
    const auto m = is_monotone(down, 1e-12);
    CHECK((m == Monotonicity::Decreasing || m == Monotonicity::Constant));
    CHECK(same_function(decreasing_rearrangement(down), down, 1e-12));
  }
}

TEST_CASE("band bookkeeping adds up") {
  Rng rng(303);
  for (int i = 0; i < 300; ++i) {
    FunctionOptions opt;
    opt.plateaus = i % 3 == 0;
    const auto f = random_function(rng, opt);
    const auto bands = band_decomposition(f);
    const auto u = decreasing_rearrangement(f);
    double d = 0.0;
    double e = 0.0;
    for (const Band& b : bands) {
      d += b.preimage_measure;
      e += b.rearranged_measure;
      CHECK(b.lo < b.hi);
      CHECK(b.count() >= 1);
      CHECK(b.orientation == b.branches.front().sign);
      for (std::size_t j = 0; j < b.count(); ++j) {
        const int expected = (j % 2 == 0) ? b.orientation : -b.orientation;
        CHECK(b.branches[j].sign == expected);
      }
      const double lo = std::min(f.front(), f.back());
      const double hi = std::max(f.front(), f.back());
      if (b.lo >= hi || b.hi <= lo) CHECK(b.count() % 2 == 0);

      // slope law at the band midpoint of u_*
      const double mid = 0.5 * (b.lo + b.hi);
      const auto pre = level_preimages(u, mid);
      REQUIRE(pre.size() == 1);
      CHECK(std::abs(std::abs(pre[0].slope) * b.inverse_slope_sum() - 1.0) <= 1e-12);
    }
    CHECK(std::abs(d + plateau_measure(f) - 1.0) <= 1e-10);
    CHECK(std::abs(e + plateau_measure(f) - 1.0) <= 1e-10);
  }
}

TEST_CASE("rearrangement agrees with the sampling oracle") {
  Rng rng(304);
  oracle::OracleConfig cfg;
  cfg.samples = 20000;
  for (int i = 0; i < 100; ++i) {
    const auto f = random_function(rng);
    const double lip = max_abs_slope(f);
    const auto u = decreasing_rearrangement(f);
    CHECK(oracle::sup_distance(oracle::sampled_rearrangement(f, cfg), u) <=
          10.0 * lip / static_cast<double>(cfg.samples) + 1e-12);
  }
}
