#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "aniso/polya.hpp"
#include "aniso/pwa.hpp"
#include "aniso/rayleigh.hpp"
#include "aniso/rearrange.hpp"
#include "aniso/verify.hpp"
#include "json_io.hpp"

namespace aniso::cli {

namespace fs = std::filesystem;

namespace {

json run_json(const RunReport& r) {
  return {{"command", r.command},
          {"seed", r.seed},
          {"trials", r.trials},
          {"violations", r.violations},
          {"worst_gap", r.worst_gap},
          {"artifacts", r.artifacts}};
}

fs::path sibling(const fs::path& report, const std::string& suffix) {
  fs::path p = report;
  p.replace_filename(report.stem().string() + suffix);
  return p;
}

double equimeasurability_residual(const PiecewiseAffine& f, const PiecewiseAffine& g) {
  const double lo = f.min_value();
  const double hi = f.max_value();
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double level = lo + (hi - lo) * (k + 0.5) / 100.0;
    worst = std::max(worst, std::abs(superlevel_measure(g, level) - superlevel_measure(f, level)));
  }
  return worst;
}

}  // namespace

unsigned threads_from_env() {
  const char* env = std::getenv("ANISO_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  unsigned n = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto res = std::from_chars(env, end, n);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw InputError(std::string("ANISO_THREADS must be a nonnegative integer, got '") + env + "'");
  }
  return n;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  std::vector<Suite> suites;
  if (args.suite == "all") {
    const auto all = all_suites();
    suites.assign(all.begin(), all.end());
  } else if (const auto s = parse_suite(args.suite)) {
    suites.push_back(*s);
  } else {
    throw InputError("unknown suite '" + args.suite +
                     "' (expected polya1, polya2, polya3, bands, hl, rayleigh or all)");
  }
  if (args.trials < 1) throw InputError("--trials must be at least 1");

  const fs::path report_path = args.out.empty() ? fs::path("verify_" + args.suite + ".json")
                                                : fs::path(args.out);
  RunReport run;
  run.command = "verify " + args.suite;
  run.seed = args.seed;
  run.trials = args.trials;
  run.worst_gap = 0.0;

  json sections = json::array();
  bool first = true;
  std::ostringstream summary;
  for (Suite s : suites) {
    const BatteryResult r = run_battery(s, args.trials, args.seed, args.threads);
    run.violations += r.violations;
    run.worst_gap = first ? r.worst_gap : std::min(run.worst_gap, r.worst_gap);
    first = false;

    const fs::path csv = suites.size() == 1
                             ? sibling(report_path, ".csv")
                             : sibling(report_path, "_" + std::string(to_string(s)) + ".csv");
    std::ostringstream rows;
    write_trial_csv(rows, r);
    write_text_file(csv, rows.str());
    run.artifacts.push_back(csv.string());
    sections.push_back(to_json(r));

    summary << to_string(s) << ": trials " << r.trials << ", violations " << r.violations
            << ", inconclusive " << r.inconclusive << ", worst gap " << format_double(r.worst_gap)
            << '\n';
  }
  run.artifacts.insert(run.artifacts.begin(), report_path.string());

  json report = run_json(run);
  report["suites"] = std::move(sections);
  const std::string text = report.dump(2) + "\n";
  write_text_file(report_path, text);

  if (args.json) {
    out << text;
  } else {
    out << summary.str() << (run.violations == 0 ? "PASS" : "FAIL") << " (" << run.violations
        << " violations); report " << report_path.string() << '\n';
  }
  return run.violations == 0 ? kPass : kFailure;
}

int cmd_rearrange(const RearrangeArgs& args, std::ostream& out) {
  if (args.direction != "down" && args.direction != "up") {
    throw InputError("--direction must be 'down' or 'up'");
  }
  const PiecewiseAffine f = function_from_json(read_json_file(args.input));
  const PiecewiseAffine g =
      args.direction == "down" ? decreasing_rearrangement(f) : increasing_rearrangement(f);

  json report{{"command", "rearrange"},
              {"direction", args.direction},
              {"residual", equimeasurability_residual(f, g)}};
  if (args.out.empty()) {
    report["function"] = to_json(g);
  } else {
    write_text_file(args.out, to_json(g).dump(2) + "\n");
    report["artifacts"] = {args.out};
  }
  out << report.dump(2) << '\n';
  return kPass;
}

int cmd_energy(const EnergyArgs& args, std::ostream& out) {
  const PiecewiseAffine f = function_from_json(read_json_file(args.input));
  std::optional<AnisotropicNorm> norm;
  try {
    norm.emplace(args.a, args.b, args.p);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid norm: ") + e.what());
  }
  const InequalityReport plain = polya_inequality(f, *norm);
  const InequalityReport refined = refined_bound(f, *norm);
  const InequalityReport lower = min_inequality(f, *norm);

  json report{{"command", "energy"},
              {"norm", to_json(*norm)},
              {"energy", anisotropic_energy(f, *norm)},
              {"K", p_derivative_norm(decreasing_rearrangement(f), args.p)},
              {"excess_measure", refined.excess_measure},
              {"rearrangement_bound", to_json(plain)},
              {"refined_bound", to_json(refined)},
              {"min_bound", to_json(lower)}};
  out << report.dump(2) << '\n';
  return plain.holds && refined.holds && lower.holds ? kPass : kFailure;
}

int cmd_eigen(const EigenArgs& args, std::ostream& out) {
  json doc = read_json_file(args.problem);
  if (doc.is_object()) {
    if (args.kappa) doc["kappa"] = *args.kappa;
    if (args.grid) doc["grid_size"] = *args.grid;
  }
  const QuotientProblem prob = problem_from_json(doc);

  MinimizeOptions opt;
  opt.threads = args.threads;
  const MinimizerReport result = minimize_quotient(prob, args.seed, opt);

  InequalityReport comp = competitor_improves(result.phi, prob, CompetitorMode::Unimodal);
  comp.seed = args.seed;
  json checks{{"unimodal", to_json(comp)}};
  bool ok = !comp.conclusive || comp.holds;
  if (prob.kappa() == 0.0) {
    InequalityReport mono = competitor_improves(result.phi, prob, CompetitorMode::Monotone);
    mono.seed = args.seed;
    ok = ok && (!mono.conclusive || mono.holds);
    checks["monotone"] = to_json(mono);
  }

  const fs::path report_path = args.out.empty() ? fs::path("eigen.json") : fs::path(args.out);
  const fs::path csv = sibling(report_path, "_phi.csv");
  {
    std::ostringstream rows;
    rows << "t,phi\n";
    const auto bps = result.phi.breakpoints();
    const auto vs = result.phi.values();
    for (std::size_t i = 0; i < bps.size(); ++i) {
      rows << format_double(bps[i]) << ',' << format_double(vs[i]) << '\n';
    }
    write_text_file(csv, rows.str());
  }

  RunReport run;
  run.command = "eigen";
  run.seed = args.seed;
  run.trials = 1;
  run.violations = ok ? 0 : 1;
  run.worst_gap = comp.normalized_gap();
  run.artifacts = {report_path.string(), csv.string()};

  json report = run_json(run);
  report["problem"] = to_json(prob);
  report["minimizer"] = to_json(result);
  report["competitor"] = std::move(checks);
  const std::string text = report.dump(2) + "\n";
  write_text_file(report_path, text);

  if (args.json) {
    out << text;
  } else {
    out << "lambda_plus " << format_double(result.lambda_plus) << '\n'
        << "structure " << to_string(result.structure) << '\n'
        << "iterations " << result.iterations << (result.converged ? " (converged)" : " (iteration cap)")
        << '\n'
        << "competitor " << (ok ? "no worse" : "WORSE") << " (gap " << format_double(comp.gap)
        << ")\n"
        << "report " << report_path.string() << '\n';
  }
  return ok ? kPass : kFailure;
}

}  // namespace aniso::cli
