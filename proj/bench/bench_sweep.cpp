// Copyright 2026 The nmrtele Authors
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

// Serial reference sweep against the OpenMP sweep on the default grid.

#include <benchmark/benchmark.h>

#include "nmrtele/experiment.hpp"

namespace {

nmrtele::SweepConfig config(nmrtele::ExperimentKind kind, nmrtele::Engine engine) {
  nmrtele::SweepConfig cfg;
  cfg.delays = nmrtele::defaultDelayGrid();
  cfg.experiment = kind;
  cfg.engine = engine;
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = config(nmrtele::ExperimentKind::Teleport, static_cast<nmrtele::Engine>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nmrtele::runSweepSerial(cfg));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = config(nmrtele::ExperimentKind::Teleport, static_cast<nmrtele::Engine>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nmrtele::runSweep(cfg));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
