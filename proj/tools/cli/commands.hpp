#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace aniso::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_gap = 0.0;
  std::vector<std::string> artifacts;
};

struct VerifyArgs {
  std::string suite;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;  // report path; empty picks verify_<suite>.json
  bool json = false;
  unsigned threads = 0;
};

struct RearrangeArgs {
  std::string input;
  std::string direction = "down";
  std::string out;  // empty prints the function inline
};

struct EnergyArgs {
  std::string input;
  double a = 1.0;
  double b = 1.0;
  double p = 2.0;
};

struct EigenArgs {
  std::string problem;
  std::uint64_t seed = 1;
  std::optional<double> kappa;
  std::optional<std::size_t> grid;
  std::string out;  // report path; empty picks eigen.json
  bool json = false;
  unsigned threads = 0;
};

// Each command writes its human-readable summary (or JSON with --json) to
// `out` and returns the exit code. InputError propagates to the caller.
int cmd_verify(const VerifyArgs& args, std::ostream& out);
int cmd_rearrange(const RearrangeArgs& args, std::ostream& out);
int cmd_energy(const EnergyArgs& args, std::ostream& out);
int cmd_eigen(const EigenArgs& args, std::ostream& out);

/// ANISO_THREADS, or 0 (machine parallelism) when unset.
unsigned threads_from_env();

}  // namespace aniso::cli
