#include "aniso/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aniso/errors.hpp"

namespace aniso {

WeightFunction::WeightFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_{std::move(breakpoints)}, values_{std::move(values)} {
  if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("weight needs r+1 breakpoints and r values");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("weight breakpoints must start at 0 and end at 1");
  }
  for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
    if (!(breakpoints_[k + 1] > breakpoints_[k])) {
      throw std::invalid_argument("weight breakpoints must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("weight values must be finite");
  }
}

WeightFunction::WeightFunction(Unchecked, std::vector<double> breakpoints,
                               std::vector<double> values)
    : breakpoints_{std::move(breakpoints)}, values_{std::move(values)} {}

WeightFunction WeightFunction::constant(double c) { return {{0.0, 1.0}, {c}}; }

double WeightFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("weight evaluated outside [0,1]");
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  k = std::clamp<std::size_t>(k, 1, values_.size()) - 1;
  return values_[k];
}

bool WeightFunction::has_positive_part() const noexcept {
  return std::any_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
}

double WeightFunction::integral() const noexcept {
  double acc = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) acc += values_[k] * width(k);
  return acc;
}

WeightFunction WeightFunction::from_widths(const std::vector<double>& widths,
                                           const std::vector<double>& values) {
  std::vector<double> bps{0.0};
  std::vector<double> vals;
  double acc = 0.0;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    if (!(widths[k] > 0.0)) continue;
    acc += widths[k];
    const double pos = std::min(acc, 1.0);
    if (!vals.empty() && vals.back() == values[k]) {
      bps.back() = pos;
      continue;
    }
    if (pos <= bps.back()) continue;
    bps.push_back(pos);
    vals.push_back(values[k]);
  }
  if (vals.empty()) throw std::invalid_argument("weight needs a piece of positive width");
  bps.back() = 1.0;
  return {Unchecked{}, std::move(bps), std::move(vals)};
}

WeightFunction WeightFunction::decreasing_rearrangement() const {
  std::vector<std::size_t> order(values_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t i, std::size_t j) { return values_[i] > values_[j]; });
  std::vector<double> widths;
  std::vector<double> vals;
  for (std::size_t k : order) {
    widths.push_back(width(k));
    vals.push_back(values_[k]);
  }
  return from_widths(widths, vals);
}

WeightFunction WeightFunction::increasing_rearrangement() const {
  const WeightFunction down = decreasing_rearrangement();
  std::vector<double> widths;
  std::vector<double> vals;
  for (std::size_t k = down.pieces(); k-- > 0;) {
    widths.push_back(down.width(k));
    vals.push_back(down.values_[k]);
  }
  return from_widths(widths, vals);
}

WeightFunction WeightFunction::restricted(double lo, double hi) const {
  if (!(lo >= 0.0 && hi <= 1.0 && hi > lo)) {
    throw std::invalid_argument("weight restriction needs 0 <= lo < hi <= 1");
  }
  std::vector<double> widths;
  std::vector<double> vals;
  const double span = hi - lo;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double a = std::max(lo, breakpoints_[k]);
    const double b = std::min(hi, breakpoints_[k + 1]);
    if (b <= a) continue;
    widths.push_back((b - a) / span);
    vals.push_back(values_[k]);
  }
  return from_widths(widths, vals);
}

WeightFunction WeightFunction::concatenate(const WeightFunction& left,
                                           const WeightFunction& right, double split) {
  if (!(split > 0.0 && split < 1.0)) {
    throw std::invalid_argument("weight concatenation split must lie in (0,1)");
  }
  std::vector<double> widths;
  std::vector<double> vals;
  for (std::size_t k = 0; k < left.pieces(); ++k) {
    widths.push_back(left.width(k) * split);
    vals.push_back(left.values_[k]);
  }
  for (std::size_t k = 0; k < right.pieces(); ++k) {
    widths.push_back(right.width(k) * (1.0 - split));
    vals.push_back(right.values_[k]);
  }
  return from_widths(widths, vals);
}

}  // namespace aniso
