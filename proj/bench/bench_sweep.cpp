// SPDX-License-Identifier: Apache-2.0
//
// risanm - RIS-aided MIMO channel estimation by atomic norm minimization
// Copyright (C) 2026 The risanm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "risanm/experiment.hpp"

#include <benchmark/benchmark.h>

using namespace risanm;

namespace
{
    ExperimentConfig bench_config(int trials)
    {
        ExperimentConfig cfg = default_config(SweepKind::Snr);
        cfg.dims.M_B = 4;
        cfg.dims.N_B = 2;
        cfg.dims.M_R = 16;
        cfg.dims.M_U = 2;
        cfg.dims.N_U = 1;
        cfg.dims.D = 8;
        cfg.dims.B = 8;
        cfg.snr_db_list = {0.0};
        cfg.estimators = {Estimator::ANM};
        cfg.trials = trials;
        return cfg;
    }

    void run(benchmark::State &state, Execution exec)
    {
        const ExperimentConfig cfg = bench_config(static_cast<int>(state.range(0)));
        for (auto _ : state)
        {
            SweepResult r = sweep_snr(cfg, exec);
            benchmark::DoNotOptimize(r.rows.data());
        }
        state.SetItemsProcessed(state.iterations() * state.range(0));
    }

    void BM_SweepSerial(benchmark::State &state) { run(state, Execution::Serial); }
    void BM_SweepParallel(benchmark::State &state) { run(state, Execution::Parallel); }
}

BENCHMARK(BM_SweepSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
