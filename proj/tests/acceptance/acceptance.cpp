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
#include "../oracles.hpp"
#include "risanm/anm_estimation.hpp"
#include "risanm/beam_training.hpp"
#include "risanm/channel_model.hpp"
#include "risanm/experiment.hpp"
#include "risanm/ris_codebook.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

using namespace risanm;

namespace
{
    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0)
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    int failures = 0;

    void report(int id, const char *name, bool pass, const std::string &detail)
    {
        std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
        std::fflush(stdout);
        if (!pass)
            ++failures;
    }

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    // Worst solver checks over the ANM rows of a sweep.
    struct SolverAudit
    {
        double worst_psd = std::numeric_limits<double>::infinity();
        double worst_mismatch = 0.0;
        int solutions = 0;

        void add(const SweepResult &r)
        {
            for (const auto &row : r.rows)
                if (row.estimator != Estimator::LS)
                {
                    worst_psd = std::min(worst_psd, row.worst_psd_ratio);
                    worst_mismatch = std::max(worst_mismatch, row.worst_objective_mismatch);
                    solutions += row.trials_used;
                }
        }
    };

    // SE of the mean of paired differences a - b (same trials, common random numbers).
    double paired_se(const SweepRow &a, const SweepRow &b)
    {
        const std::size_t n = std::min(a.errors.size(), b.errors.size());
        if (n < 2)
            return 0.0;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mean += a.errors[i] - b.errors[i];
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double d = a.errors[i] - b.errors[i] - mean;
            ss += d * d;
        }
        return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }

    const double INF = std::numeric_limits<double>::infinity();
}

int main()
{
    const SystemDims full_dims{8, 32, 4, 4, 2, 16, 16};
    SolverAudit audit;

    // 1
    {
        const auto t0 = Clock::now();
        const TrainingSetup s = default_setup(full_dims);
        const CMatrix K = oracle::kron(s.F.transpose(), s.C.adjoint());
        double worst = 0.0;
        for (int q = 0; q < 100; ++q)
        {
            Rng rng = substream(1001, q);
            const ChannelPair ch = make_channels(sample_paths(1 + q % 2, Hop::BsToRis, 30, 150, rng),
                                                 sample_paths(1 + (q / 2) % 2, Hop::RisToUe, 30, 150, rng), full_dims);
            const RisCodebook cb = q % 2 ? adapted_codebook(32, 16) : subset_codebook(32, 16);
            const CompiledMeasurement m = run_protocol(ch, s, cb, 0.0, static_cast<std::uint64_t>(q));
            const CMatrix ref = K * oracle::khatri_rao(ch.H_BR.transpose(), ch.H_RU) * cb.W;
            worst = std::max(worst, oracle::rel(m.Y_stack, ref));
        }
        const double dt = seconds_since(t0);
        report(1, "noiseless pipeline identity", worst <= 1e-9 && dt < 5.0,
               fmt("100 instances, worst relative error %.3g (<= 1e-9), %.2f s (< 5 s)", worst, dt));
    }

    // 2
    {
        const auto t0 = Clock::now();
        SystemDims d = full_dims;
        d.B = 32;
        const TrainingSetup s = default_setup(d);
        double worst = 0.0;
        for (int q = 0; q < 20; ++q)
        {
            Rng rng = substream(1002, q);
            const ChannelPair ch = make_channels(sample_paths(2, Hop::BsToRis, 30, 150, rng),
                                                 sample_paths(2, Hop::RisToUe, 30, 150, rng), d);
            const CompiledMeasurement m = run_protocol(ch, s, full_dft_codebook(32), 0.0, static_cast<std::uint64_t>(q));
            const CMatrix truth = oracle::khatri_rao(ch.H_BR.transpose(), ch.H_RU);
            worst = std::max(worst, oracle::rel(ls_estimate(m.Y_stack, m.F, m.C, m.W).H, truth));
        }
        const double dt = seconds_since(t0);
        report(2, "least-squares exactness", worst <= 1e-8 && dt < 5.0,
               fmt("20 instances, worst relative error %.3g (<= 1e-8), %.2f s (< 5 s)", worst, dt));
    }

    // 3
    {
        const auto t0 = Clock::now();
        double worst = 0.0;
        std::uniform_real_distribution<double> angle(1.0, 179.0);
        for (int q = 0; q < 20; ++q)
        {
            Rng rng = substream(1003, q);
            const cplx c = complex_normal(rng) * 5.0;
            CVector b = oracle::random_vector(rng, 8);
            b /= b.norm();
            const CMatrix Z = c * oracle::steer(std::cos(angle(rng) * oracle::PI / 180.0), 16) * b.transpose();
            worst = std::max(worst, std::abs(atomic_norm(Z) - std::abs(c)) / std::abs(c));
        }
        const double dt = seconds_since(t0);
        report(3, "atomic-norm certificate", worst <= 5e-3 && dt < 60.0,
               fmt("20 atoms, worst relative deviation %.3g (<= 5e-3), %.2f s (< 60 s)", worst, dt));
    }

    // 4
    {
        const auto t0 = Clock::now();
        ExperimentConfig cfg = default_config(SweepKind::Snr);
        cfg.L_BR = 1;
        cfg.L_RU = 2;
        cfg.dims.B = 16;
        cfg.min_separation_deg = 15.0;
        cfg.snr_db_list = {INF};
        cfg.estimators = {Estimator::ANM};
        cfg.trials = 20;
        cfg.seed = 4;
        const SweepResult r = sweep_snr(cfg);
        audit.add(r);
        const SweepRow &row = r.rows.at(0);
        const double worst = *std::max_element(row.errors.begin(), row.errors.end());
        report(4, "noiseless recovery with B < M_R", row.nmse <= 1e-3,
               fmt("NMSE %.3g (<= 1e-3), worst trial %.3g, %d unconverged, %.1f s", row.nmse, worst, row.unconverged,
                   seconds_since(t0)));
    }

    // 5
    {
        const auto t0 = Clock::now();
        ExperimentConfig cfg = default_config(SweepKind::Separation);
        cfg.L_BR = 1;
        cfg.L_RU = 2;
        cfg.dims.B = 16;
        cfg.snr_db = 0.0;
        cfg.separation_deg_list = {4.0};
        cfg.estimators = {Estimator::ANM};
        cfg.trials = 100;
        cfg.seed = 5;
        const SweepResult r = sweep_separation(cfg);
        audit.add(r);
        const SweepRow &row = r.rows.at(0);
        report(5, "separation 4 deg at 0 dB", row.median() <= 0.05,
               fmt("median NMSE %.4g (<= 0.05), mean %.4g, Q = %d, %d unconverged, %.1f s", row.median(), row.nmse,
                   row.trials_used, row.unconverged, seconds_since(t0)));
    }

    // 6
    {
        const auto t0 = Clock::now();
        ExperimentConfig cfg = default_config(SweepKind::Frames);
        cfg.L_BR = 2;
        cfg.L_RU = 2;
        cfg.snr_db = 0.0;
        cfg.frames_list = {16, 32};
        cfg.estimators = {Estimator::ANM, Estimator::ANM_NO_ADAPT};
        cfg.trials = 100;
        cfg.seed = 6;
        const SweepResult r = sweep_frames(cfg);
        audit.add(r);
        const SweepRow &a16 = *r.find(16, Estimator::ANM), &n16 = *r.find(16, Estimator::ANM_NO_ADAPT);
        const SweepRow &a32 = *r.find(32, Estimator::ANM), &n32 = *r.find(32, Estimator::ANM_NO_ADAPT);
        const double ratio = n16.nmse / a16.nmse;
        const double se32 = std::sqrt(a32.standard_error() * a32.standard_error() +
                                      n32.standard_error() * n32.standard_error());
        const double gap32 = std::abs(a32.nmse - n32.nmse);
        report(6, "beamwidth adaptation", ratio >= 5.0 && gap32 <= 2.0 * se32,
               fmt("B=16: NO_ADAPT/ANM = %.3g/%.3g = %.3g (>= 5); B=32: |%.4g - %.4g| = %.3g (<= 2 SE = %.3g), %.1f s",
                   n16.nmse, a16.nmse, ratio, a32.nmse, n32.nmse, gap32, 2.0 * se32, seconds_since(t0)));
    }

    // 7
    {
        const auto t0 = Clock::now();
        ExperimentConfig cfg = default_config(SweepKind::Snr);
        cfg.dims.B = 16;
        cfg.snr_db_list = {-10.0, 0.0, 10.0};
        cfg.estimators = {Estimator::ANM};
        cfg.trials = 100;
        cfg.seed = 7;
        const SweepResult r = sweep_snr(cfg);
        audit.add(r);
        const SweepRow &lo = *r.find(-10.0, Estimator::ANM), &mid = *r.find(0.0, Estimator::ANM),
                       &hi = *r.find(10.0, Estimator::ANM);
        const double se1 = paired_se(lo, mid), se2 = paired_se(mid, hi);
        const bool ok = lo.nmse - mid.nmse > 2.0 * se1 && mid.nmse - hi.nmse > 2.0 * se2;
        report(7, "SNR monotonicity", ok,
               fmt("NMSE %.4g > %.4g > %.4g; drops %.3g, %.3g exceed 2 paired SE %.3g, %.3g, %.1f s", lo.nmse,
                   mid.nmse, hi.nmse, lo.nmse - mid.nmse, mid.nmse - hi.nmse, 2.0 * se1, 2.0 * se2,
                   seconds_since(t0)));
    }

    // 8
    report(8, "solver feasibility", audit.worst_psd >= -1e-6 && audit.worst_mismatch <= 1e-8,
           fmt("%d solutions, worst lambda_min/lambda_max %.3g (>= -1e-6), worst objective mismatch %.3g (<= 1e-8)",
               audit.solutions, audit.worst_psd, audit.worst_mismatch));

    // 9
    {
        const auto t0 = Clock::now();
        bool ok = true;
        double worst_margin = INF;
        for (int B = 8; B <= 32; ++B)
        {
            const CoverageReport c = coverage_check(adapted_codebook(32, B), 1024, 0.6);
            ok = ok && c.ok && c.worst_gain >= 0.6 * B;
            worst_margin = std::min(worst_margin, c.worst_gain / B);
        }
        const CoverageReport s = coverage_check(subset_codebook(32, 16), 1024, 0.6);
        const double dt = seconds_since(t0);
        report(9, "coverage", ok && !s.ok && dt < 1.0,
               fmt("adapted worst gain/B %.4g (>= 0.6); subset(32,16) worst gain %.3g fails: %s, %.3f s (< 1 s)",
                   worst_margin, s.worst_gain, s.ok ? "no" : "yes", dt));
    }

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}
