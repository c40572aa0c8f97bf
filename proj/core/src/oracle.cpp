#include "aniso/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace aniso::oracle {

namespace {

// Values of f at increasing points, by a single forward sweep.
std::vector<double> sweep(const PiecewiseAffine& f, std::span<const double> points) {
  const auto bps = f.breakpoints();
  const auto vs = f.values();
  std::vector<double> out(points.size());
  std::size_t piece = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double t = points[k];
    while (piece + 2 < bps.size() && bps[piece + 1] < t) ++piece;
    const double t0 = bps[piece];
    const double t1 = bps[piece + 1];
    if (t <= t0) {
      out[k] = vs[piece];
    } else if (t >= t1) {
      out[k] = vs[piece + 1];
    } else {
      const double lam = (t - t0) / (t1 - t0);
      out[k] = vs[piece] + lam * (vs[piece + 1] - vs[piece]);
    }
  }
  return out;
}

}  // namespace

void OracleConfig::validate() const {
  if (samples < 1000) throw std::invalid_argument("oracle needs at least 1000 samples");
  if (quadrature_points < 256) {
    throw std::invalid_argument("oracle needs at least 256 quadrature points");
  }
  if (!(fd_step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

StepFunction::StepFunction(std::vector<double> values) : values_{std::move(values)} {
  if (values_.empty()) throw std::invalid_argument("step function needs a cell");
}

double StepFunction::operator()(double t) const {
  const double n = static_cast<double>(values_.size());
  auto k = static_cast<std::size_t>(std::floor(t * n));
  return values_[std::min(k, values_.size() - 1)];
}

StepFunction sampled_rearrangement(const PiecewiseAffine& f, const OracleConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.samples;
  std::vector<double> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
  }
  std::vector<double> vals = sweep(f, pts);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return StepFunction(std::move(vals));
}

double sup_distance(const StepFunction& approx, const PiecewiseAffine& exact) {
  const std::size_t n = approx.cells();
  std::vector<double> edges(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    edges[k] = static_cast<double>(k) / static_cast<double>(n);
  }
  const std::vector<double> at = sweep(exact, edges);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = approx.values()[k];
    worst = std::max({worst, std::abs(at[k] - s), std::abs(at[k + 1] - s)});
  }
  return worst;
}

double quadrature_energy(const PiecewiseAffine& f, const AnisotropicNorm& norm,
                         const OracleConfig& cfg) {
  cfg.validate();
  const std::size_t q = cfg.quadrature_points;
  std::vector<double> grid;
  grid.reserve(q + 1 + f.breakpoints().size());
  for (std::size_t k = 0; k <= q; ++k) {
    grid.push_back(static_cast<double>(k) / static_cast<double>(q));
  }
  for (double t : f.breakpoints()) grid.push_back(t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const std::vector<double> vals = sweep(f, grid);
  const double ap = std::pow(norm.a(), norm.p());
  const double bp = std::pow(norm.b(), norm.p());
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double dt = grid[k + 1] - grid[k];
    const double s = (vals[k + 1] - vals[k]) / dt;
    const double density = s > 0.0 ? ap * std::pow(s, norm.p()) : bp * std::pow(-s, norm.p());
    acc += density * dt;
  }
  return acc;
}

std::vector<double> fd_gradient(const Objective& objective, std::span<const double> point,
                                const OracleConfig& cfg) {
  std::vector<double> probe(point.begin(), point.end());
  std::vector<double> out(point.size());
  const double h = cfg.fd_step;
  for (std::size_t i = 0; i < point.size(); ++i) {
    probe[i] = point[i] + h;
    const auto up = objective(probe);
    probe[i] = point[i] - h;
    const auto down = objective(probe);
    probe[i] = point[i];
    out[i] = (up && down) ? (*up - *down) / (2.0 * h) : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace aniso::oracle
