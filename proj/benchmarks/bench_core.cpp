#include <benchmark/benchmark.h>

#include "aniso/polya.hpp"
#include "aniso/random.hpp"
#include "aniso/rayleigh.hpp"
#include "aniso/rearrange.hpp"

namespace {

aniso::PiecewiseAffine sample_function(std::size_t pieces) {
  aniso::Rng rng(42);
  aniso::FunctionOptions opt;
  opt.max_pieces = pieces;
  // redraw until we get the full piece count
  for (;;) {
    auto f = aniso::random_function(rng, opt);
    if (f.pieces() == pieces) return f;
  }
}

void BM_DecreasingRearrangement(benchmark::State& state) {
  const auto f = sample_function(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aniso::decreasing_rearrangement(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DecreasingRearrangement)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_AnisotropicEnergy(benchmark::State& state) {
  const auto f = sample_function(static_cast<std::size_t>(state.range(0)));
  const aniso::AnisotropicNorm norm(1.0, 2.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(aniso::anisotropic_energy(f, norm));
}
BENCHMARK(BM_AnisotropicEnergy)->RangeMultiplier(4)->Range(4, 1024);

void BM_RefinedBound(benchmark::State& state) {
  const auto f = sample_function(static_cast<std::size_t>(state.range(0)));
  const aniso::AnisotropicNorm norm(1.0, 2.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(aniso::refined_bound(f, norm));
}
BENCHMARK(BM_RefinedBound)->RangeMultiplier(4)->Range(4, 256);

void BM_MinimizeQuotient(benchmark::State& state) {
  const aniso::QuotientProblem prob(aniso::AnisotropicNorm(1.0, 1.0, 2.0),
                                    aniso::WeightFunction({0.0, 0.5, 1.0}, {1.0, -1.0}), 10.0,
                                    static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aniso::minimize_quotient(prob, 1));
}
BENCHMARK(BM_MinimizeQuotient)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
