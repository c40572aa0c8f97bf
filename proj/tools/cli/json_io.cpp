#include "json_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace aniso::cli {

namespace {

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  const json& arr = j.at(key);
  if (!arr.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number()) {
      throw InputError(std::string("field \"") + key + "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InputError(std::string("field \"") + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                     what);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

PiecewiseAffine function_from_json(const json& j) {
  require_object(j, "function");
  try {
    return PiecewiseAffine(number_array(j, "breakpoints"), number_array(j, "values"));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid function: ") + e.what());
  }
}

AnisotropicNorm norm_from_json(const json& j) {
  require_object(j, "norm");
  try {
    return AnisotropicNorm(number(j, "a"), number(j, "b"), number(j, "p"));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid norm: ") + e.what());
  }
}

WeightFunction weight_from_json(const json& j) {
  require_object(j, "weight");
  try {
    return WeightFunction(number_array(j, "breakpoints"), number_array(j, "values"));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid weight: ") + e.what());
  }
}

QuotientProblem problem_from_json(const json& j) {
  require_object(j, "problem");
  if (!j.contains("norm")) throw InputError("missing field \"norm\"");
  if (!j.contains("weight")) throw InputError("missing field \"weight\"");
  const double kappa = j.contains("kappa") ? number(j, "kappa") : 0.0;
  std::size_t grid = 128;
  if (j.contains("grid_size")) {
    if (!j.at("grid_size").is_number_unsigned()) {
      throw InputError("field \"grid_size\" must be a nonnegative integer");
    }
    grid = j.at("grid_size").get<std::size_t>();
  }
  try {
    return QuotientProblem(norm_from_json(j.at("norm")), weight_from_json(j.at("weight")), kappa,
                           grid);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid problem: ") + e.what());
  }
}

json to_json(const PiecewiseAffine& f) {
  const auto bps = f.breakpoints();
  const auto vs = f.values();
  return {{"breakpoints", std::vector<double>(bps.begin(), bps.end())},
          {"values", std::vector<double>(vs.begin(), vs.end())}};
}

json to_json(const AnisotropicNorm& n) { return {{"a", n.a()}, {"b", n.b()}, {"p", n.p()}}; }

json to_json(const WeightFunction& m) {
  const auto bps = m.breakpoints();
  const auto vs = m.values();
  return {{"breakpoints", std::vector<double>(bps.begin(), bps.end())},
          {"values", std::vector<double>(vs.begin(), vs.end())}};
}

json to_json(const QuotientProblem& prob) {
  return {{"norm", to_json(prob.norm())},
          {"weight", to_json(prob.weight())},
          {"kappa", prob.kappa()},
          {"grid_size", prob.grid_size()}};
}

json to_json(const InequalityReport& r) {
  return {{"lhs", r.lhs},
          {"rhs", r.rhs},
          {"gap", r.gap},
          {"excess_term", r.excess_term},
          {"excess_measure", r.excess_measure},
          {"equality", r.equality},
          {"holds", r.holds},
          {"conclusive", r.conclusive},
          {"monotone", std::string(to_string(r.monotone))},
          {"orientation", std::string(to_string(r.orientation))},
          {"seed", r.seed}};
}

json to_json(const MinimizerReport& r) {
  return {{"phi", to_json(r.phi)},
          {"lambda_plus", r.lambda_plus},
          {"structure", to_string(r.structure)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"start_index", r.start_index},
          {"seed", r.seed}};
}

json to_json(const BatteryResult& r) {
  json failures = json::array();
  for (const TrialRow& row : r.rows) {
    if (row.violation.empty()) continue;
    failures.push_back({{"trial", row.trial}, {"seed", row.seed}, {"reason", row.violation}});
  }
  return {{"suite", std::string(to_string(r.suite))},
          {"trials", r.trials},
          {"violations", r.violations},
          {"inconclusive", r.inconclusive},
          {"worst_gap", r.worst_gap},
          {"failures", std::move(failures)}};
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_trial_csv(std::ostream& out, const BatteryResult& r) {
  out << "trial,seed,lhs,rhs,gap,excess_measure,monotone,orientation\n";
  for (const TrialRow& row : r.rows) {
    out << row.trial << ',' << row.seed << ',' << format_double(row.lhs) << ','
        << format_double(row.rhs) << ',' << format_double(row.gap) << ','
        << format_double(row.excess_measure) << ',' << to_string(row.monotone) << ','
        << to_string(row.orientation) << '\n';
  }
}

}  // namespace aniso::cli
