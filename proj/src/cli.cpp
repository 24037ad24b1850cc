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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace risanm
{
    int cli_main(int argc, char **argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Monte Carlo NMSE sweeps for RIS-aided MIMO channel estimation"};
        std::string experiment;
        std::optional<int> trials;
        std::optional<long long> seed;
        std::string out_path;
        std::string config_path;
        std::string estimators;
        std::string trace_path;
        int threads = 0;
        bool verbose = false;

        app.add_option("--experiment", experiment, "Sweep to run")
            ->required()
            ->check(CLI::IsMember({"separation", "frames", "snr"}));
        app.add_option("--trials", trials, "Monte Carlo trials per sweep point");
        app.add_option("--seed", seed, "Master seed");
        app.add_option("--out", out_path, "Output CSV (default: standard output)");
        app.add_option("--config", config_path, "key=value configuration file");
        app.add_option("--estimators", estimators, "Comma-separated subset of LS,ANM,ANM_NO_ADAPT");
        app.add_option("--threads", threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
        app.add_option("--solver-trace", trace_path, "Write per-iteration solver residuals to this CSV (runs serially)");
        app.add_flag("--verbose", verbose, "Progress and solver diagnostics on standard error");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e, out, err);
            err << app.help();
            return 1;
        }

        try
        {
            const SweepKind kind = parse_sweep_kind(experiment);
            ExperimentConfig cfg = default_config(kind);
            if (!config_path.empty())
                load_config_file(cfg, config_path);
            if (trials)
                cfg.trials = *trials;
            if (seed)
            {
                if (*seed < 0)
                    throw config_error("seed must be non-negative");
                cfg.seed = static_cast<std::uint64_t>(*seed);
            }
            if (!estimators.empty())
            {
                std::istringstream in("estimators=" + estimators);
                apply_config(cfg, in);
            }
            if (!out_path.empty())
                cfg.output = out_path;

            std::ofstream trace;
            if (!trace_path.empty())
            {
                trace.open(trace_path);
                if (!trace)
                    throw config_error("cannot open solver trace file '" + trace_path + "'");
                trace << "iteration,objective,primal_residual,dual_residual\n";
                cfg.solver.trace = &trace;
            }
            cfg.validate(kind);

#ifdef _OPENMP
            if (threads > 0)
                omp_set_num_threads(threads);
#endif
            if (verbose)
                err << "running " << to_string(kind) << " sweep: " << cfg.trials << " trials per point, seed "
                    << cfg.seed << "\n";

            const SweepResult result = run_sweep(cfg, kind);

            for (const auto &w : result.warnings)
                err << "warning: " << w << "\n";
            if (verbose)
                for (const auto &r : result.rows)
                    err << "x=" << r.x << " " << to_string(r.estimator) << " nmse=" << r.nmse
                        << " median=" << r.median() << " se=" << r.standard_error()
                        << " unconverged=" << r.unconverged << "\n";

            if (cfg.output.empty())
            {
                write_sweep_csv(out, result);
            }
            else
            {
                std::ofstream f(cfg.output, std::ios::binary);
                if (!f)
                    throw config_error("cannot write output file '" + cfg.output + "'");
                write_sweep_csv(f, result);
            }
            return 0;
        }
        catch (const numeric_failure &e)
        {
            err << "numeric failure: " << e.what() << "\n";
            return 2;
        }
        catch (const config_error &e)
        {
            err << "error: " << e.what() << "\n" << app.help();
            return 1;
        }
        catch (const std::invalid_argument &e)
        {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }
}
