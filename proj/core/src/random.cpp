#include "aniso/random.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace aniso {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index));
}

namespace {

std::vector<double> sorted_interior(Rng& rng, std::size_t count) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<double> pts(count);
    for (double& t : pts) t = unit(rng);
    std::sort(pts.begin(), pts.end());
    bool ok = true;
    double prev = 0.0;
    for (double t : pts) {
      if (t - prev < kBreakpointGap) ok = false;
      prev = t;
    }
    if (ok && 1.0 - prev >= kBreakpointGap) return pts;
  }
}

}  // namespace

PiecewiseAffine random_function(Rng& rng, const FunctionOptions& opt) {
  std::uniform_int_distribution<std::size_t> piece_count(1, std::max<std::size_t>(opt.max_pieces, 1));
  std::uniform_real_distribution<double> value(opt.lo, opt.hi);
  std::bernoulli_distribution coin(0.5);

  const std::size_t n = piece_count(rng);
  std::vector<double> bps{0.0};
  for (double t : sorted_interior(rng, n - 1)) bps.push_back(t);
  bps.push_back(1.0);

  std::vector<double> vals(n + 1);
  for (double& v : vals) v = value(rng);

  if (opt.plateaus && n > 1) {
    std::bernoulli_distribution copy(0.3);
    for (std::size_t i = 1; i <= n; ++i) {
      if (copy(rng)) vals[i] = vals[i - 1];
    }
  }
  if (opt.monotone) {
    bool rising = opt.boundary == BoundaryOrder::Up;
    if (opt.boundary == BoundaryOrder::Any) rising = coin(rng);
    std::sort(vals.begin(), vals.end());
    if (!rising) std::reverse(vals.begin(), vals.end());
  } else if (opt.boundary == BoundaryOrder::Down && vals.front() < vals.back()) {
    std::swap(vals.front(), vals.back());
  } else if (opt.boundary == BoundaryOrder::Up && vals.front() > vals.back()) {
    std::swap(vals.front(), vals.back());
  }
  return {std::move(bps), std::move(vals)};
}

AnisotropicNorm random_norm(Rng& rng) {
  static constexpr std::array<double, 3> kExponents = {1.5, 2.0, 3.0};
  std::uniform_real_distribution<double> weight(0.25, 4.0);
  std::uniform_int_distribution<std::size_t> pick(0, kExponents.size() - 1);
  const double a = weight(rng);
  const double b = weight(rng);
  return {a, b, kExponents[pick(rng)]};
}

WeightFunction random_weight(Rng& rng, bool sign_changing) {
  std::uniform_int_distribution<std::size_t> piece_count(sign_changing ? 2 : 1, 8);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  const std::size_t r = piece_count(rng);
  std::vector<double> bps{0.0};
  for (double t : sorted_interior(rng, r - 1)) bps.push_back(t);
  bps.push_back(1.0);
  for (;;) {
    std::vector<double> vals(r);
    for (double& v : vals) v = value(rng);
    const bool pos = std::any_of(vals.begin(), vals.end(), [](double v) { return v > 0.0; });
    const bool neg = std::any_of(vals.begin(), vals.end(), [](double v) { return v < 0.0; });
    if (pos && (neg || !sign_changing)) return {bps, std::move(vals)};
  }
}

}  // namespace aniso
