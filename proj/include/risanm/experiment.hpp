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

#ifndef RISANM_EXPERIMENT_HPP
#define RISANM_EXPERIMENT_HPP

#include "risanm/anm_estimation.hpp"
#include "risanm/channel_model.hpp"
#include "risanm/ris_codebook.hpp"
#include "risanm/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace risanm
{
    enum class Estimator
    {
        LS,
        ANM,
        ANM_NO_ADAPT
    };

    enum class SweepKind
    {
        Separation,
        Frames,
        Snr
    };

    std::string to_string(Estimator e);
    std::string to_string(SweepKind k);
    Estimator parse_estimator(const std::string &s);
    SweepKind parse_sweep_kind(const std::string &s);

    // Thrown for malformed configuration files or flag values.
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct ExperimentConfig
    {
        SystemDims dims;         // dims.B is the frame count for the separation and SNR sweeps
        int L_BR = 1;
        int L_RU = 2;
        double snr_db = 0.0;     // SNR of the separation and frame sweeps
        std::vector<double> snr_db_list{-10.0, -5.0, 0.0, 5.0, 10.0};
        std::vector<int> frames_list{8, 12, 16, 20, 24, 28, 32};
        std::vector<double> separation_deg_list{2.0, 4.0, 6.0, 8.0, 10.0, 15.0, 20.0, 30.0, 40.0};
        int trials = 300;
        std::uint64_t seed = 1;
        std::vector<Estimator> estimators{Estimator::ANM, Estimator::ANM_NO_ADAPT, Estimator::LS};
        SubsetStrategy subset_strategy = SubsetStrategy::EvenSpaced;
        double angle_lo_deg = 30.0;
        double angle_hi_deg = 150.0;
        double min_separation_deg = 0.0; // between RIS-to-UE paths, AoA and AoD
        double noiseless_tau_scale = 1e-6; // tau = scale * ||G||_F when sigma = 0
        int max_resamples = 20;
        SolverOptions solver;
        std::string output; // empty: standard output

        // Throws config_error naming the offending field.
        void validate(SweepKind kind) const;
    };

    // Defaults per sweep: separation and SNR use L_BR = 1, L_RU = 2, B = 16;
    // the frame sweep uses L_BR = L_RU = 2.
    ExperimentConfig default_config(SweepKind kind);

    // Applies key=value lines on top of cfg. '#' starts a comment. Unknown keys are errors.
    void apply_config(ExperimentConfig &cfg, std::istream &in);
    void load_config_file(ExperimentConfig &cfg, const std::string &path);

    // Noise standard deviation giving the requested SNR for the realized gains.
    // Throws std::domain_error when either gain sum vanishes.
    double sigma_for_snr(const PathSet &bs_ris, const PathSet &ris_ue, double snr_db);
    double snr_for_sigma(const PathSet &bs_ris, const PathSet &ris_ue, double sigma);

    // ||est - truth||_F^2 / ||truth||_F^2.
    double normalized_error(const EffectiveChannel &estimate, const EffectiveChannel &truth);

    // Mean of normalized_error over paired sequences.
    double nmse(const std::vector<EffectiveChannel> &estimates, const std::vector<EffectiveChannel> &truths);

    // One sweep coordinate. Infinite snr_db means a noiseless run.
    struct TrialPoint
    {
        double snr_db = 0.0;
        int frames = 16;
        std::optional<double> separation_deg; // pins the second RIS-to-UE AoA at first + separation
    };

    struct EstimateRecord
    {
        Estimator estimator;
        EffectiveChannel estimate;
        double error = 0.0; // normalized_error against the truth
        // Solver checks, ANM estimators only.
        bool converged = true;
        int iterations = 0;
        double psd_ratio = 0.0;       // lambda_min / lambda_max of the block matrix
        double objective_mismatch = 0.0; // relative gap between reported and recomputed objective
    };

    struct TrialResult
    {
        EffectiveChannel truth;
        PathSet bs_ris;
        PathSet ris_ue;
        double sigma = 0.0;
        int resamples = 0;
        std::vector<EstimateRecord> estimates;
        std::vector<std::string> warnings;
    };

    // Full pipeline for one Monte Carlo trial. Attempt k draws from
    // substream(cfg.seed, stream, k); degenerate instances move to the next attempt.
    TrialResult run_trial(const ExperimentConfig &cfg, const TrialPoint &point, std::uint64_t stream);

    // Runs every configured estimator on fixed paths. Returns std::nullopt for
    // degenerate instances (vanishing gain sums or channel).
    std::optional<TrialResult> run_instance(const ExperimentConfig &cfg, const TrialPoint &point, const PathSet &bs_ris,
                                            const PathSet &ris_ue, std::uint64_t noise_seed);

    struct SweepRow
    {
        double x = 0.0;
        Estimator estimator = Estimator::ANM;
        double nmse = 0.0;
        int trials_used = 0;
        int failures = 0;
        std::vector<double> errors; // per-trial normalized errors, trial order
        int unconverged = 0;
        double worst_psd_ratio = 0.0;
        double worst_objective_mismatch = 0.0;

        double median() const;
        double standard_error() const;
    };

    struct SweepResult
    {
        SweepKind kind = SweepKind::Snr;
        std::vector<SweepRow> rows;
        std::vector<std::string> warnings;

        const SweepRow *find(double x, Estimator e) const;
    };

    enum class Execution
    {
        Serial,
        Parallel
    };

    // Runs every trial of every sweep point. Trials are seeded by their index
    // only, so Serial and Parallel give bit-identical results.
    SweepResult run_points(const ExperimentConfig &cfg, SweepKind kind, const std::vector<double> &xs,
                           Execution exec = Execution::Parallel);

    SweepResult sweep_separation(const ExperimentConfig &cfg, Execution exec = Execution::Parallel);
    SweepResult sweep_frames(const ExperimentConfig &cfg, Execution exec = Execution::Parallel);
    SweepResult sweep_snr(const ExperimentConfig &cfg, Execution exec = Execution::Parallel);
    SweepResult run_sweep(const ExperimentConfig &cfg, SweepKind kind, Execution exec = Execution::Parallel);

    // "x,estimator,nmse,trials,failures" with 6 significant digits.
    void write_sweep_csv(std::ostream &os, const SweepResult &result);

    // Command-line entry point. Returns 0 on success, 1 on configuration errors,
    // 2 on numeric failures.
    int cli_main(int argc, char **argv, std::ostream &out, std::ostream &err);
}

#endif
