#include "aniso/pwa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "aniso/errors.hpp"
#include "power_mean.hpp"

namespace aniso {

namespace {

constexpr double kWidthSumTol = 1e-10;
constexpr double kNegativeTol = 1e-12;

bool all_finite(const std::vector<double>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

AnisotropicNorm::AnisotropicNorm(double a, double b, double p)
    : a_{a}, b_{b}, p_{p}, a_pow_{std::pow(a, p)}, b_pow_{std::pow(b, p)} {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("anisotropic norm needs a > 0 and b > 0");
  }
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("anisotropic norm needs p > 1");
  }
}

double AnisotropicNorm::density(double slope) const noexcept {
  if (slope > 0.0) return a_pow_ * std::pow(slope, p_);
  if (slope < 0.0) return b_pow_ * std::pow(-slope, p_);
  return 0.0;
}

PiecewiseAffine::PiecewiseAffine(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_{std::move(breakpoints)}, values_{std::move(values)} {
  if (breakpoints_.size() < 2) {
    throw std::invalid_argument("piecewise-affine function needs at least two breakpoints");
  }
  if (breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("breakpoints and values differ in length");
  }
  if (!all_finite(breakpoints_) || !all_finite(values_)) {
    throw std::invalid_argument("breakpoints and values must be finite");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("breakpoints must start at 0 and end at 1");
  }
  widths_.resize(breakpoints_.size() - 1);
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    widths_[i] = breakpoints_[i + 1] - breakpoints_[i];
    if (!(widths_[i] >= kBreakpointGap)) {
      throw std::invalid_argument("breakpoints must increase by at least 1e-12 (index " +
                                  std::to_string(i + 1) + ")");
    }
  }
}

PiecewiseAffine::PiecewiseAffine(Unchecked, std::vector<double> breakpoints,
                                 std::vector<double> values, std::vector<double> widths)
    : breakpoints_{std::move(breakpoints)},
      values_{std::move(values)},
      widths_{std::move(widths)} {}

PiecewiseAffine PiecewiseAffine::constant(double c) { return {{0.0, 1.0}, {c, c}}; }

PiecewiseAffine PiecewiseAffine::from_widths(std::vector<double> values,
                                             std::vector<double> widths) {
  if (values.size() != widths.size() + 1 || widths.empty()) {
    throw std::invalid_argument("from_widths needs n widths and n+1 values");
  }
  if (!all_finite(values) || !all_finite(widths)) {
    throw std::invalid_argument("from_widths needs finite input");
  }
  std::vector<double> kept_values{values.front()};
  std::vector<double> kept_widths;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (widths[i] < 0.0) throw std::invalid_argument("negative piece width");
    if (widths[i] == 0.0 && values[i + 1] == kept_values.back()) continue;
    kept_widths.push_back(widths[i]);
    kept_values.push_back(values[i + 1]);
  }
  if (kept_widths.empty()) {
    throw std::invalid_argument("from_widths needs a piece of positive width");
  }
  const double total = std::accumulate(kept_widths.begin(), kept_widths.end(), 0.0);
  if (std::abs(total - 1.0) > kWidthSumTol) {
    throw std::invalid_argument("piece widths sum to " + std::to_string(total) + ", not 1");
  }
  std::vector<double> bps(kept_widths.size() + 1);
  bps[0] = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < kept_widths.size(); ++i) {
    acc += kept_widths[i];
    bps[i + 1] = std::min(acc, 1.0);
  }
  bps.back() = 1.0;
  return {Unchecked{}, std::move(bps), std::move(kept_values), std::move(kept_widths)};
}

PiecewiseAffine PiecewiseAffine::concatenate(const PiecewiseAffine& left,
                                             const PiecewiseAffine& right, double split) {
  if (!(split > 0.0 && split < 1.0)) {
    throw std::invalid_argument("concatenation split must lie in (0,1)");
  }
  std::vector<double> values(left.values_.begin(), left.values_.end());
  std::vector<double> widths;
  widths.reserve(left.pieces() + right.pieces() + 1);
  for (double w : left.widths_) widths.push_back(w * split);
  if (right.front() != left.back()) {
    widths.push_back(0.0);
    values.push_back(right.front());
  }
  values.insert(values.end(), right.values_.begin() + 1, right.values_.end());
  for (double w : right.widths_) widths.push_back(w * (1.0 - split));
  return from_widths(std::move(values), std::move(widths));
}

double PiecewiseAffine::slope(std::size_t i) const noexcept {
  if (widths_[i] == 0.0) return 0.0;
  return (values_[i + 1] - values_[i]) / widths_[i];
}

double PiecewiseAffine::min_value() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double PiecewiseAffine::max_value() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

bool PiecewiseAffine::is_continuous() const noexcept {
  for (std::size_t i = 0; i < widths_.size(); ++i) {
    if (widths_[i] == 0.0 && values_[i] != values_[i + 1]) return false;
  }
  return true;
}

double PiecewiseAffine::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("evaluation point " + std::to_string(t) + " outside [0,1]");
  }
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto i = static_cast<std::size_t>(it - breakpoints_.begin());
  if (breakpoints_[i] == t) return values_[i];
  const double t0 = breakpoints_[i - 1];
  const double t1 = breakpoints_[i];
  const double v0 = values_[i - 1];
  const double v1 = values_[i];
  return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
}

PiecewiseAffine PiecewiseAffine::reversed() const {
  std::vector<double> values(values_.rbegin(), values_.rend());
  std::vector<double> widths(widths_.rbegin(), widths_.rend());
  return from_widths(std::move(values), std::move(widths));
}

PiecewiseAffine PiecewiseAffine::restricted(double lo, double hi) const {
  if (!(lo >= 0.0 && hi <= 1.0 && hi - lo > 0.0)) {
    throw std::invalid_argument("restriction needs 0 <= lo < hi <= 1");
  }
  const double span = hi - lo;
  std::vector<double> positions{lo};
  std::vector<double> values{(*this)(lo)};
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double t = breakpoints_[i];
    if (t <= lo || t >= hi) continue;
    // a repeated position is a jump and stays one
    positions.push_back(t);
    values.push_back(values_[i]);
  }
  positions.push_back(hi);
  values.push_back((*this)(hi));
  std::vector<double> widths(positions.size() - 1);
  for (std::size_t k = 0; k + 1 < positions.size(); ++k) {
    widths[k] = (positions[k + 1] - positions[k]) / span;
  }
  return from_widths(std::move(values), std::move(widths));
}

PiecewiseAffine PiecewiseAffine::scaled(double c) const {
  std::vector<double> values(values_);
  for (double& v : values) v *= c;
  return {Unchecked{}, breakpoints_, std::move(values), widths_};
}

std::string_view to_string(Monotonicity m) noexcept {
  switch (m) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::Constant: return "constant";
    case Monotonicity::None: return "none";
  }
  return "none";
}

double evaluate(const PiecewiseAffine& f, double t) { return f(t); }

std::vector<SegmentSlope> derivative_segments(const PiecewiseAffine& f) {
  std::vector<SegmentSlope> out;
  out.reserve(f.pieces());
  const auto bps = f.breakpoints();
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.widths()[i] == 0.0) continue;
    out.push_back({{bps[i], bps[i + 1]}, f.slope(i)});
  }
  return out;
}

double anisotropic_energy(const PiecewiseAffine& f, const AnisotropicNorm& norm) {
  double rising = 0.0;
  double falling = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double s = f.slope(i);
    if (s > 0.0) {
      rising += f.widths()[i] * std::pow(s, norm.p());
    } else if (s < 0.0) {
      falling += f.widths()[i] * std::pow(-s, norm.p());
    }
  }
  return norm.a_pow() * rising + norm.b_pow() * falling;
}

double p_derivative_norm(const PiecewiseAffine& f, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double s = f.slope(i);
    if (s != 0.0) acc += f.widths()[i] * std::pow(std::abs(s), p);
  }
  return acc;
}

double p_derivative_norm_on(const PiecewiseAffine& f, double p, std::span<const Interval> set) {
  const auto bps = f.breakpoints();
  double acc = 0.0;
  for (const Interval& iv : set) {
    for (std::size_t i = 0; i < f.pieces(); ++i) {
      const double s = f.slope(i);
      if (s == 0.0) continue;
      const double lo = std::max(iv.lo, bps[i]);
      const double hi = std::min(iv.hi, bps[i + 1]);
      if (hi <= lo) continue;
      // whole piece inside: use the stored width
      const double len = (lo == bps[i] && hi == bps[i + 1]) ? f.widths()[i] : hi - lo;
      acc += len * std::pow(std::abs(s), p);
    }
  }
  return acc;
}

Monotonicity is_monotone(const PiecewiseAffine& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("monotonicity tolerance must be >= 0");
  bool rises = false;
  bool falls = false;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.widths()[i] == 0.0) continue;
    const double s = f.slope(i);
    if (s > tol) rises = true;
    if (s < -tol) falls = true;
  }
  if (rises && falls) return Monotonicity::None;
  if (rises) return Monotonicity::Increasing;
  if (falls) return Monotonicity::Decreasing;
  return Monotonicity::Constant;
}

double weighted_p_integral(const PiecewiseAffine& f, const WeightFunction& m, double p) {
  if (f.min_value() < -kNegativeTol) {
    throw PreconditionError("weighted p-integral needs a nonnegative function");
  }
  const auto fb = f.breakpoints();
  const auto fv = f.values();
  const auto mb = m.breakpoints();
  const auto mv = m.values();
  double acc = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    if (f.widths()[i] == 0.0) continue;
    const double t0 = fb[i];
    const double t1 = fb[i + 1];
    const double v0 = std::max(fv[i], 0.0);
    const double v1 = std::max(fv[i + 1], 0.0);
    const double span = t1 - t0;
    while (k + 1 < m.pieces() && mb[k + 1] <= t0) ++k;
    double lo = t0;
    std::size_t j = k;
    while (lo < t1) {
      const double hi = (j + 1 < m.pieces()) ? std::min(mb[j + 1], t1) : t1;
      if (hi > lo && mv[j] != 0.0) {
        const double y0 = lo == t0 ? v0 : v0 + (v1 - v0) * ((lo - t0) / span);
        const double y1 = hi == t1 ? v1 : v0 + (v1 - v0) * ((hi - t0) / span);
        const double len = (lo == t0 && hi == t1) ? f.widths()[i] : hi - lo;
        acc += mv[j] * len * detail::power_mean(y0, y1, p);
      }
      lo = hi;
      if (j + 1 < m.pieces()) ++j;
    }
  }
  return acc;
}

double p_integral(const PiecewiseAffine& f, double p) {
  const auto fv = f.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double w = f.widths()[i];
    if (w == 0.0) continue;
    const double v0 = fv[i];
    const double v1 = fv[i + 1];
    if ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0)) {
      const double zero = v0 / (v0 - v1);
      acc += w * zero * detail::power_mean(std::abs(v0), 0.0, p);
      acc += w * (1.0 - zero) * detail::power_mean(0.0, std::abs(v1), p);
    } else {
      acc += w * detail::power_mean(std::abs(v0), std::abs(v1), p);
    }
  }
  return acc;
}

double superlevel_measure(const PiecewiseAffine& f, double level) {
  const auto fv = f.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double w = f.widths()[i];
    if (w == 0.0) continue;
    const double lo = std::min(fv[i], fv[i + 1]);
    const double hi = std::max(fv[i], fv[i + 1]);
    if (lo > level) {
      acc += w;
    } else if (hi > level) {
      acc += w * ((hi - level) / (hi - lo));
    }
  }
  return acc;
}

double max_abs_slope(const PiecewiseAffine& f) noexcept {
  double out = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) out = std::max(out, std::abs(f.slope(i)));
  return out;
}

}  // namespace aniso
