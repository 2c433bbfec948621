// Copyright 2026 The starqed Authors
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

#include <benchmark/benchmark.h>

#include "starqed/analysis.h"
#include "starqed/builders.h"
#include "starqed/engine.h"
#include "starqed/shadows.h"

namespace {

using namespace starqed;

CircuitProgram lifetime_program(int cycles) {
    DeviceModel dev = device_preset("A");
    ExperimentSpec spec;
    spec.psi_in = "0000";
    spec.cycles = cycles;
    return compile_noise(build_experiment(spec, dev), dev);
}

void BM_FrameShots(benchmark::State& state) {
    const auto program = lifetime_program(static_cast<int>(state.range(0)));
    const std::size_t shots = 8192;
    uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_shots(program, shots, seed++));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * shots));
}
BENCHMARK(BM_FrameShots)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_TableauShots(benchmark::State& state) {
    const auto program = lifetime_program(static_cast<int>(state.range(0)));
    const std::size_t shots = 512;
    EngineOptions opt;
    opt.backend = Backend::Tableau;
    uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_shots(program, shots, seed++, opt));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * shots));
}
BENCHMARK(BM_TableauShots)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Postselect(benchmark::State& state) {
    const auto batch = run_shots(lifetime_program(20), 100000, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(postselect(batch, PostselectRule::WithFinalSubspace));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * batch.shots()));
}
BENCHMARK(BM_Postselect)->Unit(benchmark::kMicrosecond);

void BM_ShadowEstimate(benchmark::State& state) {
    auto settings = sample_settings(SettingMode::Exhaustive81, 81, 1);
    CMatrix rho = CMatrix::Identity(16, 16) / 16.0;
    auto data = sample_dataset(rho, settings, 200, 2);
    ShadowOptions opt;
    opt.bootstrap = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(purity_estimate(data, opt));
    }
}
BENCHMARK(BM_ShadowEstimate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
