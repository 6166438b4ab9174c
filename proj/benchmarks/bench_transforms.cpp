// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "qspec/inference.hpp"
#include "qspec/smoothed_pg.hpp"

namespace {

using namespace qspec;

TimeSeries series(std::size_t n) {
  std::mt19937_64 gen(n);
  std::normal_distribution<double> g;
  std::vector<double> y(n);
  for (auto& v : y) v = g(gen);
  return TimeSeries(std::move(y));
}

const std::vector<double> levels{0.1, 0.25, 0.5, 0.75, 0.9};

void BM_ClippedFT(benchmark::State& state) {
  const auto y = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(clipped_ft(y, levels, true));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClippedFT)->RangeMultiplier(4)->Range(64, 1 << 14)->Complexity();

void BM_ClippedFTBootstrap(benchmark::State& state) {
  const auto y = series(1024);
  const BootSpec boot{static_cast<std::size_t>(state.range(0)), 32, 1};
  for (auto _ : state) benchmark::DoNotOptimize(clipped_ft(y, {0.5}, true, boot));
}
BENCHMARK(BM_ClippedFTBootstrap)->Arg(50)->Arg(250);

void BM_QregFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto y = series(n);
  const double omega = fourier_frequency(static_cast<std::int64_t>(n / 8), n);
  for (auto _ : state) benchmark::DoNotOptimize(qreg_fit(y, 0.75, omega, true));
}
BENCHMARK(BM_QregFit)->RangeMultiplier(2)->Range(32, 1024);

void BM_QregEstimator(benchmark::State& state) {
  const auto y = series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qreg_estimator(y, {0.25, 0.5, 0.75}, true));
}
BENCHMARK(BM_QregEstimator)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_QuantilePG(benchmark::State& state) {
  const auto fr = std::make_shared<const FreqRep>(clipped_ft(series(static_cast<std::size_t>(state.range(0))), levels, true));
  for (auto _ : state) benchmark::DoNotOptimize(quantile_pg(fr));
}
BENCHMARK(BM_QuantilePG)->Arg(256)->Arg(4096);

void BM_SmoothPG(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pg = quantile_pg(clipped_ft(series(n), levels, true));
  const KernelWeight w(Kernel::epanechnikov, static_cast<double>(state.range(1)) / 100.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(smooth_pg(pg, w));
}
BENCHMARK(BM_SmoothPG)->Args({256, 30})->Args({1024, 7})->Args({1024, 30})->Args({4096, 30})->Unit(benchmark::kMillisecond);

void BM_SpecDistr(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pg = quantile_pg(clipped_ft(series(n), levels, true));
  for (auto _ : state) benchmark::DoNotOptimize(smooth_pg(pg, SpecDistrWeight(n)));
}
BENCHMARK(BM_SpecDistr)->Arg(1024)->Arg(4096);

void BM_BootstrapBand(benchmark::State& state) {
  const auto pg = quantile_pg(clipped_ft(series(1024), {0.5}, true, BootSpec{250, 32, 3}));
  const auto spg = smooth_pg(pg, KernelWeight(Kernel::epanechnikov, 0.3, 1024));
  for (auto _ : state) benchmark::DoNotOptimize(confidence_band(spg, 0.1, CiMethod::boot_full));
}
BENCHMARK(BM_BootstrapBand)->Unit(benchmark::kMillisecond);

}  // namespace
