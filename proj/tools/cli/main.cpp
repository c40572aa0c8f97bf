#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "aniso/errors.hpp"
#include "commands.hpp"
#include "json_io.hpp"

using namespace aniso::cli;

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic rearrangement inequalities: verification batteries and tools"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run a property battery");
  v->add_option("suite", verify.suite, "polya1 | polya2 | polya3 | bands | hl | rayleigh | all")
      ->required();
  v->add_option("--trials", verify.trials, "number of trials per suite")->capture_default_str();
  v->add_option("--seed", verify.seed, "64-bit base seed")->capture_default_str();
  v->add_option("--out", verify.out, "report path (default verify_<suite>.json)");
  v->add_flag("--json", verify.json, "print the JSON report");

  RearrangeArgs rearrange;
  auto* r = app.add_subcommand("rearrange", "monotone rearrangement of a function file");
  r->add_option("input", rearrange.input, "function JSON")->required();
  r->add_option("--direction", rearrange.direction, "down | up")->capture_default_str();
  r->add_option("--out", rearrange.out, "write the rearranged function here");

  EnergyArgs energy;
  auto* e = app.add_subcommand("energy", "energy, K and the lower bounds of a function file");
  e->add_option("input", energy.input, "function JSON")->required();
  e->add_option("--a", energy.a)->capture_default_str();
  e->add_option("--b", energy.b)->capture_default_str();
  e->add_option("--p", energy.p)->capture_default_str();

  EigenArgs eigen;
  auto* g = app.add_subcommand("eigen", "minimize the weighted quotient of a problem file");
  g->add_option("problem", eigen.problem, "problem JSON")->required();
  g->add_option("--seed", eigen.seed)->capture_default_str();
  g->add_option("--kappa", eigen.kappa, "override the boundary parameter");
  g->add_option("--grid", eigen.grid, "override the grid size");
  g->add_option("--out", eigen.out, "report path (default eigen.json)");
  g->add_flag("--json", eigen.json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kPass : kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kPass;
  try {
    if (v->parsed()) {
      verify.threads = threads_from_env();
      code = cmd_verify(verify, std::cout);
    } else if (r->parsed()) {
      code = cmd_rearrange(rearrange, std::cout);
    } else if (e->parsed()) {
      code = cmd_energy(energy, std::cout);
    } else if (g->parsed()) {
      eigen.threads = threads_from_env();
      code = cmd_eigen(eigen, std::cout);
    }
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const aniso::InfeasibleError& err) {
    std::cerr << "infeasible: " << err.what() << '\n';
    return kFailure;
  } catch (const std::exception& err) {
    std::cerr << "failure: " << err.what() << '\n';
    return kFailure;
  }
  // timing stays off the reports so they are reproducible byte for byte
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  std::cerr << "elapsed " << took.count() << " s\n";
  return code;
}
