// Copyright 2026 The nlbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "nlbox/bell.hpp"
#include "nlbox/counterfactual.hpp"
#include "nlbox/icausality.hpp"
#include "nlbox/sweeps.hpp"

namespace {

nlbox::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? nlbox::Execution::serial : nlbox::Execution::parallel;
}

void BM_Theorem2Sampled(benchmark::State& state) {
  const auto a = nlbox::tsirelson_angles();
  const std::vector<double> a0{a[0], a[1]}, a1{a[2], a[3]};
  const auto m0 = nlbox::planar_measurements(a0), m1 = nlbox::planar_measurements(a1);
  const std::vector<std::size_t> dims{2, 2};
  const auto rho = nlbox::states::singlet();
  for (auto _ : state) {
    benchmark::DoNotOptimize(nlbox::theorem2_sampled(rho, dims, m0, m1, 200000, 7, mode(state)));
  }
}
BENCHMARK(BM_Theorem2Sampled)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MonogamySweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nlbox::monogamy_sweep(500, 7, mode(state)));
}
BENCHMARK(BM_MonogamySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IcResourceSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nlbox::ic_resource_sweep(100, 7, mode(state)));
}
BENCHMARK(BM_IcResourceSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ProtocolSuccess(benchmark::State& state) {
  const auto s = nlbox::pawlowski_protocol(0.9, 0.9, 2);
  for (auto _ : state) benchmark::DoNotOptimize(nlbox::simulate_success(s, 20000, 7, mode(state)));
}
BENCHMARK(BM_ProtocolSuccess)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IcSampled(benchmark::State& state) {
  const auto s = nlbox::van_dam_strategy(nlbox::isotropic_box(0.8));
  for (auto _ : state) benchmark::DoNotOptimize(nlbox::ic_quantity_sampled(s, 200000, 7, mode(state)));
}
BENCHMARK(BM_IcSampled)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
