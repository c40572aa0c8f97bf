#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "aniso/pwa.hpp"
#include "aniso/weight.hpp"

namespace aniso {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for trial `index` of a run seeded with `seed`; every trial can be
/// replayed on its own.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

enum class BoundaryOrder { Any, Down, Up };

struct FunctionOptions {
  std::size_t max_pieces = 12;
  double lo = 0.0;
  double hi = 1.0;
  BoundaryOrder boundary = BoundaryOrder::Any;
  bool monotone = false;  // sorted values, direction from `boundary` (Any: coin flip)
  bool plateaus = false;  // copy some values onto their neighbours
};

/// Piece count uniform in {1..max_pieces}, interior breakpoints sorted
/// uniform variates, values uniform in [lo, hi].
PiecewiseAffine random_function(Rng& rng, const FunctionOptions& opt = {});

/// a, b uniform in [0.25, 4], p drawn from {1.5, 2, 3}.
AnisotropicNorm random_norm(Rng& rng);

/// 1..8 pieces with values in [-1, 1]; at least one piece is positive and,
/// when sign_changing is set, at least one is negative.
WeightFunction random_weight(Rng& rng, bool sign_changing = true);

}  // namespace aniso
