#pragma once

// Closed forms for the mean of y^p over an affine profile y(s) = y0 + (y1 - y0) s,
// s in [0,1], y0, y1 >= 0, together with the partial derivatives in y0 and y1.
// Nearly-flat profiles switch to Gauss-Legendre, where the closed form would
// lose digits to cancellation and the integrand is analytic on the interval.

#include <algorithm>
#include <array>
#include <cmath>

namespace aniso::detail {

struct PowerMean {
  double value;
  double d_y0;
  double d_y1;
};

inline constexpr std::array<double, 10> kGaussNodes = {
    0.013046735741414140, 0.067468316655507744, 0.160295215850487797, 0.283302302935376404,
    0.425562830509184394, 0.574437169490815606, 0.716697697064623596, 0.839704784149512203,
    0.932531683344492256, 0.986953264258585860};
inline constexpr std::array<double, 10> kGaussWeights = {
    0.033335672154344069, 0.074725674575290296, 0.109543181257991021, 0.134633359654998178,
    0.147762112357376436, 0.147762112357376436, 0.134633359654998178, 0.109543181257991021,
    0.074725674575290296, 0.033335672154344069};

inline constexpr double kFlatRatio = 0.05;

inline bool nearly_flat(double y0, double y1) {
  const double top = std::max(y0, y1);
  return std::abs(y1 - y0) <= kFlatRatio * top;
}

inline double power_mean(double y0, double y1, double p) {
  const double top = std::max(y0, y1);
  if (top <= 0.0) return 0.0;
  if (nearly_flat(y0, y1)) {
    double acc = 0.0;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
      acc += kGaussWeights[k] * std::pow(y0 + (y1 - y0) * kGaussNodes[k], p);
    }
    return acc;
  }
  return (std::pow(y1, p + 1.0) - std::pow(y0, p + 1.0)) / ((p + 1.0) * (y1 - y0));
}

inline PowerMean power_mean_with_gradient(double y0, double y1, double p) {
  const double top = std::max(y0, y1);
  if (top <= 0.0) return {0.0, 0.0, 0.0};
  if (nearly_flat(y0, y1)) {
    PowerMean out{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
      const double s = kGaussNodes[k];
      const double y = y0 + (y1 - y0) * s;
      const double w = kGaussWeights[k];
      out.value += w * std::pow(y, p);
      const double dy = w * p * std::pow(y, p - 1.0);
      out.d_y0 += dy * (1.0 - s);
      out.d_y1 += dy * s;
    }
    return out;
  }
  const double d = y1 - y0;
  const double g = (std::pow(y1, p + 1.0) - std::pow(y0, p + 1.0)) / (p + 1.0);
  return {g / d, (g - std::pow(y0, p) * d) / (d * d), (std::pow(y1, p) * d - g) / (d * d)};
}

}  // namespace aniso::detail
