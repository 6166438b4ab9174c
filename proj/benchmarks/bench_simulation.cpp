// Copyright qspec contributors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qspec/quantile_sd.hpp"

namespace {

using namespace qspec;

void BM_Qar1Generate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream stream(7);
  for (auto _ : state) benchmark::DoNotOptimize(qar1_generate(n, stream));
}
BENCHMARK(BM_Qar1Generate)->Arg(512)->Arg(4096);

void BM_QuantileSD(benchmark::State& state) {
  const auto R = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantile_sd(qar1_model(), 512, {0.25, 0.5, 0.75}, R, 1, SdType::copula));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QuantileSD)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_StateRoundTrip(benchmark::State& state) {
  const auto st = quantile_sd(qar1_model(), 1024, {0.1, 0.5, 0.9}, 4, 1, SdType::copula);
  for (auto _ : state) benchmark::DoNotOptimize(deserialize_state(serialize_state(st)));
}
BENCHMARK(BM_StateRoundTrip);

}  // namespace
