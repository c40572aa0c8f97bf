#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "aniso/polya.hpp"
#include "aniso/pwa.hpp"
#include "aniso/rayleigh.hpp"
#include "aniso/verify.hpp"
#include "aniso/weight.hpp"

namespace aniso::cli {

using nlohmann::json;

/// Bad command-line input or unreadable/malformed files; maps to exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a JSON file; syntax errors carry "path:line:column".
json read_json_file(const std::filesystem::path& path);

/// Same for in-memory text; `origin` names the source in messages.
json parse_json(const std::string& text, const std::string& origin);

void write_text_file(const std::filesystem::path& path, const std::string& text);

PiecewiseAffine function_from_json(const json& j);
AnisotropicNorm norm_from_json(const json& j);
WeightFunction weight_from_json(const json& j);
QuotientProblem problem_from_json(const json& j);

json to_json(const PiecewiseAffine& f);
json to_json(const AnisotropicNorm& n);
json to_json(const WeightFunction& m);
json to_json(const QuotientProblem& prob);
json to_json(const InequalityReport& r);
json to_json(const MinimizerReport& r);
json to_json(const BatteryResult& r);

/// Columns: trial, seed, lhs, rhs, gap, excess_measure, monotone, orientation.
void write_trial_csv(std::ostream& out, const BatteryResult& r);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace aniso::cli
