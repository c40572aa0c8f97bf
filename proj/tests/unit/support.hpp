#pragma once

// Shared fixtures and test-side reference computations. The references here
// re-derive values from breakpoints/values with their own loops so that they
// do not lean on the code under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "aniso/pwa.hpp"
#include "aniso/weight.hpp"

namespace fixtures {

inline aniso::PiecewiseAffine tent() { return {{0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}}; }
inline aniso::PiecewiseAffine s_shape() { return {{0.0, 0.5, 1.0}, {0.5, 1.0, 0.0}}; }
inline aniso::PiecewiseAffine line_down() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline aniso::PiecewiseAffine line_up() { return {{0.0, 1.0}, {0.0, 1.0}}; }
inline aniso::WeightFunction plus_minus() { return {{0.0, 0.5, 1.0}, {1.0, -1.0}}; }

inline double interp(const aniso::PiecewiseAffine& f, double t) {
  const auto b = f.breakpoints();
  const auto v = f.values();
  std::size_t i = 0;
  while (i + 2 < b.size() && b[i + 1] < t) ++i;
  if (b[i + 1] == b[i]) return v[i + 1];
  const double lam = std::clamp((t - b[i]) / (b[i + 1] - b[i]), 0.0, 1.0);
  return v[i] + lam * (v[i + 1] - v[i]);
}

inline double weight_at(const aniso::WeightFunction& m, double t) {
  const auto b = m.breakpoints();
  std::size_t k = 0;
  while (k + 1 < m.pieces() && b[k + 1] <= t) ++k;
  return m.values()[k];
}

/// Midpoint rule for int m |f|^p on n cells.
inline double midpoint_weighted(const aniso::PiecewiseAffine& f, const aniso::WeightFunction& m,
                                double p, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    acc += weight_at(m, t) * std::pow(std::abs(interp(f, t)), p);
  }
  return acc / static_cast<double>(n);
}

/// |{f > level}| by counting midpoint samples.
inline double sampled_superlevel(const aniso::PiecewiseAffine& f, double level, std::size_t n) {
  std::size_t hits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    if (interp(f, t) > level) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

/// Energy of a step approximation read as a piecewise-linear function
/// through its cell values.
// Sorted samples repeat values where branches mirror each other, so slopes
// are taken over a lag of many cells rather than between neighbours.
inline double step_energy(std::span<const double> cells, const aniso::AnisotropicNorm& norm) {
  const std::size_t lag = std::max<std::size_t>(1, cells.size() / 10000);
  const double h = static_cast<double>(lag) / static_cast<double>(cells.size());
  double acc = 0.0;
  for (std::size_t k = 0; k + lag < cells.size(); k += lag) {
    const double s = (cells[k + lag] - cells[k]) / h;
    acc += (s > 0 ? std::pow(norm.a() * s, norm.p()) : std::pow(-norm.b() * s, norm.p())) * h;
  }
  return acc;
}

}  // namespace fixtures
