#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aniso/polya.hpp"

namespace aniso {

enum class Suite { Polya1, Polya2, Polya3, Bands, HardyLittlewood, Rayleigh };

std::string_view to_string(Suite s) noexcept;
std::optional<Suite> parse_suite(std::string_view name) noexcept;
std::span<const Suite> all_suites() noexcept;

struct TrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double excess_measure = 0.0;
  Monotonicity monotone = Monotonicity::None;
  Orientation orientation = Orientation::Down;
  bool conclusive = true;
  std::string violation;  // empty when every check passed
};

struct BatteryResult {
  Suite suite = Suite::Polya1;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  double worst_gap = 0.0;  // smallest gap / max(1, lhs) over conclusive trials
  std::vector<TrialRow> rows;  // sorted by trial index
};

/// Trial i draws from Rng(derive_seed(seed, i)), so any row can be replayed
/// with run_trial. threads = 0 uses every core.
BatteryResult run_battery(Suite suite, std::size_t trials, std::uint64_t seed,
                          unsigned threads = 1);

TrialRow run_trial(Suite suite, std::size_t trial, std::uint64_t trial_seed);

}  // namespace aniso
