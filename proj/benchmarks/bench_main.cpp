#include <benchmark/benchmark.h>

#include <random>

#include "superhol/grassmann.hpp"
#include "superhol/supermatrix.hpp"

using namespace superhol;

namespace {

GrassmannElement random_element(std::mt19937_64& rng, int gens) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  GrassmannElement e(gens);
  for (Mask m = 0; m < e.size(); ++m) e[m] = d(rng);
  return e;
}

void BM_grassmann_mul(benchmark::State& state) {
  int gens = int(state.range(0));
  std::mt19937_64 rng(1);
  auto a = random_element(rng, gens);
  auto b = random_element(rng, gens);
  for (auto _ : state) {
    auto c = gr_mul(a, b);
    benchmark::DoNotOptimize(c);
  }
}

void BM_supermatrix_mul(benchmark::State& state) {
  int gens = int(state.range(0));
  std::mt19937_64 rng(2);
  SuperMatrix a(1, 1, gens), b(1, 1, gens);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      a.at(r, c) = random_element(rng, gens);
      b.at(r, c) = random_element(rng, gens);
    }
  for (auto _ : state) {
    auto c = sm_mul(a, b);
    benchmark::DoNotOptimize(c);
  }
}

void BM_supermatrix_exp(benchmark::State& state) {
  int gens = int(state.range(0));
  std::mt19937_64 rng(3);
  SuperMatrix a(1, 1, gens);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      auto e = random_element(rng, gens);
      for (Mask m = 0; m < e.size(); ++m)
        if (mask_parity(m) != ((r >= 1) + (c >= 1)) % 2) e[m] = 0.0;
      a.at(r, c) = e;
    }
  for (auto _ : state) {
    auto c = sm_exp(a);
    benchmark::DoNotOptimize(c);
  }
}

} // namespace

BENCHMARK(BM_grassmann_mul)->Arg(2)->Arg(4)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK(BM_supermatrix_mul)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(BM_supermatrix_exp)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
