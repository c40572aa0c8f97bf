#include "aniso/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "aniso/errors.hpp"

namespace aniso {

namespace {

// Critical levels of f with every breakpoint value mapped to its level index.
struct LevelMap {
  std::vector<double> levels;
  std::vector<std::size_t> index_of;  // per breakpoint
};

LevelMap map_levels(const PiecewiseAffine& f) {
  const auto values = f.values();
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  LevelMap out;
  out.index_of.resize(values.size());
  double previous = 0.0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const double v = values[order[pos]];
    if (pos == 0 || v - previous > kLevelMergeTol) out.levels.push_back(v);
    out.index_of[order[pos]] = out.levels.size() - 1;
    previous = v;
  }
  return out;
}

// Measure of the preimage of each open band and of each level (plateaus).
struct LevelMeasures {
  LevelMap map;
  std::vector<double> band;     // size levels - 1
  std::vector<double> plateau;  // size levels
};

LevelMeasures measure_levels(const PiecewiseAffine& f) {
  LevelMeasures out{map_levels(f), {}, {}};
  const auto& levels = out.map.levels;
  out.band.assign(levels.size() - 1, 0.0);
  out.plateau.assign(levels.size(), 0.0);
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double w = f.widths()[i];
    if (w == 0.0) continue;
    const std::size_t k0 = out.map.index_of[i];
    const std::size_t k1 = out.map.index_of[i + 1];
    if (k0 == k1) {
      out.plateau[k0] += w;
      continue;
    }
    const std::size_t lo = std::min(k0, k1);
    const std::size_t hi = std::max(k0, k1);
    const double total = levels[hi] - levels[lo];
    for (std::size_t k = lo; k < hi; ++k) {
      out.band[k] += w * ((levels[k + 1] - levels[k]) / total);
    }
  }
  return out;
}

std::vector<Branch> crossings(const PiecewiseAffine& f, double lambda) {
  const auto bps = f.breakpoints();
  const auto vs = f.values();
  std::vector<Branch> out;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.widths()[i] == 0.0) continue;
    const double v0 = vs[i];
    const double v1 = vs[i + 1];
    if (!(std::min(v0, v1) < lambda && lambda < std::max(v0, v1))) continue;
    const double rho = bps[i] + (bps[i + 1] - bps[i]) * ((lambda - v0) / (v1 - v0));
    const double s = f.slope(i);
    out.push_back({i, rho, s, s > 0.0 ? 1 : -1});
  }
  return out;
}

}  // namespace

double Band::inverse_slope_sum() const noexcept {
  double acc = 0.0;
  for (const Branch& br : branches) acc += 1.0 / std::abs(br.slope);
  return acc;
}

DistributionFunction::DistributionFunction(std::vector<Knot> knots) : knots_{std::move(knots)} {
  if (knots_.empty()) throw std::invalid_argument("distribution function needs knots");
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
    if (knots_[k + 1].level < knots_[k].level || knots_[k + 1].measure > knots_[k].measure) {
      throw std::invalid_argument("distribution knots must be sorted and nonincreasing");
    }
  }
}

double DistributionFunction::operator()(double level) const {
  if (level < knots_.front().level) return knots_.front().measure;
  if (level >= knots_.back().level) return knots_.back().measure;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), level,
                                   [](double x, const Knot& k) { return x < k.level; });
  const auto idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
  const Knot& left = knots_[idx];
  if (left.level == level) return left.measure;
  const Knot& right = knots_[idx + 1];
  const double theta = (level - left.level) / (right.level - left.level);
  return left.measure + (right.measure - left.measure) * theta;
}

std::vector<double> critical_values(const PiecewiseAffine& f) { return map_levels(f).levels; }

DistributionFunction distribution(const PiecewiseAffine& f) {
  const LevelMeasures lm = measure_levels(f);
  const auto& levels = lm.map.levels;
  std::vector<DistributionFunction::Knot> descending;
  double above = 0.0;
  for (std::size_t k = levels.size(); k-- > 0;) {
    descending.push_back({levels[k], above});
    if (lm.plateau[k] > 0.0) {
      above += lm.plateau[k];
      descending.push_back({levels[k], above});
    }
    if (k > 0) above += lm.band[k - 1];
  }
  return DistributionFunction({descending.rbegin(), descending.rend()});
}

std::vector<Branch> level_preimages(const PiecewiseAffine& f, double lambda) {
  for (double c : critical_values(f)) {
    if (std::abs(lambda - c) <= kLevelMergeTol) {
      throw PreconditionError("level " + std::to_string(lambda) +
                              " is a critical value; move it into a band interior");
    }
  }
  return crossings(f, lambda);
}

PiecewiseAffine decreasing_rearrangement(const PiecewiseAffine& f) {
  const LevelMeasures lm = measure_levels(f);
  const auto& levels = lm.map.levels;
  const std::size_t top = levels.size() - 1;
  std::vector<double> values{levels[top]};
  std::vector<double> widths;
  if (lm.plateau[top] > 0.0) {
    widths.push_back(lm.plateau[top]);
    values.push_back(levels[top]);
  }
  for (std::size_t k = top; k-- > 0;) {
    widths.push_back(lm.band[k]);
    values.push_back(levels[k]);
    if (lm.plateau[k] > 0.0) {
      widths.push_back(lm.plateau[k]);
      values.push_back(levels[k]);
    }
  }
  return PiecewiseAffine::from_widths(std::move(values), std::move(widths));
}

PiecewiseAffine increasing_rearrangement(const PiecewiseAffine& f) {
  return decreasing_rearrangement(f).reversed();
}

std::vector<Band> band_decomposition(const PiecewiseAffine& f) {
  const std::vector<double> levels = critical_values(f);
  std::vector<Band> out;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double lo = levels[k];
    const double hi = levels[k + 1];
    if (hi - lo < kLevelMergeTol) continue;
    std::vector<Branch> branches = crossings(f, 0.5 * (lo + hi));
    if (branches.empty()) continue;
    const double height = hi - lo;
    double preimage = 0.0;
    double inverse_sum = 0.0;
    for (const Branch& br : branches) {
      preimage += height / std::abs(br.slope);
      inverse_sum += 1.0 / std::abs(br.slope);
    }
    const int orientation = branches.front().sign;
    out.push_back({lo, hi, std::move(branches), orientation, preimage, height * inverse_sum});
  }
  return out;
}

double plateau_measure(const PiecewiseAffine& f) {
  const LevelMeasures lm = measure_levels(f);
  return std::accumulate(lm.plateau.begin(), lm.plateau.end(), 0.0);
}

}  // namespace aniso
