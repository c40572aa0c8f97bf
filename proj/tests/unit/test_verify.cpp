#include <doctest.h>

#include "aniso/random.hpp"
#include "aniso/verify.hpp"

using namespace aniso;

TEST_CASE("suite names round-trip") {
  for (Suite s : all_suites()) {
    const auto parsed = parse_suite(to_string(s));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == s);
  }
  CHECK_FALSE(parse_suite("all").has_value());
  CHECK_FALSE(parse_suite("polya4").has_value());
  CHECK(all_suites().size() == 6);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("every battery passes on a small run") {
  for (Suite s : all_suites()) {
    const auto r = run_battery(s, 200, 42, 1);
    CAPTURE(to_string(s));
    CHECK(r.trials == 200);
    CHECK(r.rows.size() == 200);
    CHECK(r.violations == 0);
    CHECK(r.worst_gap >= -1e-10);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      CHECK(r.rows[i].trial == i);
      CHECK(r.rows[i].seed == derive_seed(42, i));
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto one = run_battery(Suite::Polya1, 64, 9, 1);
  const auto many = run_battery(Suite::Polya1, 64, 9, 4);
  REQUIRE(one.rows.size() == many.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].gap == many.rows[i].gap);
    CHECK(one.rows[i].lhs == many.rows[i].lhs);
  }
  CHECK(one.worst_gap == many.worst_gap);
}

TEST_CASE("a single trial replays from its seed") {
  const auto battery = run_battery(Suite::Rayleigh, 20, 5, 1);
  const auto row = run_trial(Suite::Rayleigh, 13, battery.rows[13].seed);
  CHECK(row.lhs == battery.rows[13].lhs);
  CHECK(row.rhs == battery.rows[13].rhs);
}

TEST_CASE("the generator mix includes monotone and generic inputs") {
  const auto r = run_battery(Suite::Polya2, 400, 3, 1);
  std::size_t monotone = 0;
  for (const auto& row : r.rows) {
    if (row.monotone != Monotonicity::None) ++monotone;
  }
  CHECK(monotone > 40);
  CHECK(monotone < 200);
}
