// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "tfloc/locop.hpp"
#include "tfloc/norms.hpp"
#include "tfloc/signal.hpp"
#include "tfloc/transforms.hpp"

namespace {

using namespace tfloc;

Grid bench_grid(int n) { return Grid::from_extent(1, n, 12.0); }

SampledSignal bench_signal(const Grid& g) {
  std::mt19937_64 gen(7);
  return random_coherent_mixture(g, 3, gen);
}

void BM_Stft(benchmark::State& state) {
  const Grid g = bench_grid(static_cast<int>(state.range(0)));
  const SampledSignal w = gaussian_window(g);
  const SampledSignal f = bench_signal(g);
  for (auto _ : state) {
    PhaseSpaceFunction v = stft(f, w);
    benchmark::DoNotOptimize(v.values.data());
  }
}
BENCHMARK(BM_Stft)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_InversionRoundTrip(benchmark::State& state) {
  const Grid g = bench_grid(static_cast<int>(state.range(0)));
  const SampledSignal w = gaussian_window(g);
  const SampledSignal f = bench_signal(g);
  for (auto _ : state) {
    SampledSignal rec = invert(f, w, w);
    benchmark::DoNotOptimize(rec.values.data());
  }
}
BENCHMARK(BM_InversionRoundTrip)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_LocalizationMatrix(benchmark::State& state) {
  const Grid g = bench_grid(static_cast<int>(state.range(0)));
  const SampledSignal w = gaussian_window(g);
  const SymbolSpec a = SymbolSpec::parse("gauss");
  for (auto _ : state) {
    LocOpMatrix op = localization_matrix(a, w, w);
    benchmark::DoNotOptimize(op.mat.data());
  }
}
BENCHMARK(BM_LocalizationMatrix)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_KernelRouteMatrix(benchmark::State& state) {
  const Grid g = bench_grid(static_cast<int>(state.range(0)));
  const SampledSignal w = gaussian_window(g);
  const SymbolSpec a = SymbolSpec::parse("gauss");
  for (auto _ : state) {
    LocOpMatrix op = kernel_route_matrix(a, w, w);
    benchmark::DoNotOptimize(op.mat.data());
  }
}
BENCHMARK(BM_KernelRouteMatrix)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SingularValues(benchmark::State& state) {
  const Grid g = bench_grid(static_cast<int>(state.range(0)));
  const SampledSignal w = gaussian_window(g);
  const LocOpMatrix op = localization_matrix(SymbolSpec::parse("gauss"), w, w);
  for (auto _ : state) {
    std::vector<double> sv = singular_values(op);
    benchmark::DoNotOptimize(sv.data());
  }
}
BENCHMARK(BM_SingularValues)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ModulationNorm(benchmark::State& state) {
  const Grid g = bench_grid(static_cast<int>(state.range(0)));
  const SampledSignal w = gaussian_window(g);
  const SampledSignal f = bench_signal(g);
  const MixedNormParams prm{Exponent::finite(1), Exponent::finite(2),
                            {WeightSpec{WeightFunction::parse("log1p"), 1.0, WeightBlock::full}}};
  for (auto _ : state) {
    double v = modulation_norm(f, w, prm);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ModulationNorm)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
