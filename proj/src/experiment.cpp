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
#include "risanm/array_geometry.hpp"
#include "risanm/beam_training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace risanm
{
    double sigma_for_snr(const PathSet &bs_ris, const PathSet &ris_ue, double snr_db)
    {
        const double amp = std::abs(ris_ue.gain_sum()) * std::abs(bs_ris.gain_sum());
        if (!(amp > 0.0))
            throw std::domain_error("gain sum vanishes; SNR cannot be calibrated");
        if (!std::isfinite(snr_db))
        {
            if (snr_db > 0.0)
                return 0.0;
            throw std::invalid_argument("SNR must be finite or +inf");
        }
        return amp / std::pow(10.0, snr_db / 20.0);
    }

    double snr_for_sigma(const PathSet &bs_ris, const PathSet &ris_ue, double sigma)
    {
        const double amp = std::abs(ris_ue.gain_sum()) * std::abs(bs_ris.gain_sum());
        return 10.0 * std::log10(amp * amp / (sigma * sigma));
    }

    double normalized_error(const EffectiveChannel &estimate, const EffectiveChannel &truth)
    {
        if (estimate.H.rows() != truth.H.rows() || estimate.H.cols() != truth.H.cols())
            throw std::invalid_argument("NMSE: estimate and truth differ in size");
        const double den = truth.H.squaredNorm();
        if (!(den > 0.0))
            throw std::invalid_argument("NMSE: true channel has zero norm");
        return (estimate.H - truth.H).squaredNorm() / den;
    }

    double nmse(const std::vector<EffectiveChannel> &estimates, const std::vector<EffectiveChannel> &truths)
    {
        if (estimates.empty() || estimates.size() != truths.size())
            throw std::invalid_argument("NMSE: need equally many estimates and truths, at least one");
        double acc = 0.0;
        for (std::size_t q = 0; q < truths.size(); ++q)
            acc += normalized_error(estimates[q], truths[q]);
        return acc / static_cast<double>(truths.size());
    }

    namespace
    {
        bool separated(const PathSet &ps, double min_sep)
        {
            for (std::size_t i = 0; i < ps.paths.size(); ++i)
                for (std::size_t j = i + 1; j < ps.paths.size(); ++j)
                    if (std::abs(ps.paths[i].aoa_deg - ps.paths[j].aoa_deg) < min_sep ||
                        std::abs(ps.paths[i].aod_deg - ps.paths[j].aod_deg) < min_sep)
                        return false;
            return true;
        }

        PathSet sample_ris_ue(const ExperimentConfig &cfg, const TrialPoint &point, Rng &rng,
                              std::vector<std::string> &warnings)
        {
            PathSet ru = sample_paths(cfg.L_RU, Hop::RisToUe, cfg.angle_lo_deg, cfg.angle_hi_deg, rng);
            if (cfg.min_separation_deg > 0.0)
            {
                int tries = 0;
                while (!separated(ru, cfg.min_separation_deg))
                {
                    if (++tries > 100000)
                        throw std::invalid_argument("cannot place RIS-to-UE paths with the requested separation");
                    ru = sample_paths(cfg.L_RU, Hop::RisToUe, cfg.angle_lo_deg, cfg.angle_hi_deg, rng);
                }
            }
            if (point.separation_deg && ru.paths.size() >= 2)
            {
                const double delta = *point.separation_deg;
                double lo = cfg.angle_lo_deg, hi = cfg.angle_hi_deg - delta;
                if (hi < lo)
                {
                    lo = 0.5;
                    hi = 179.5 - delta;
                    if (hi < lo)
                        throw std::invalid_argument("separation too large for any AoA pair in (0, 180)");
                    warnings.push_back("separation " + std::to_string(delta) +
                                       " deg does not fit the angle window; first AoA drawn from (0.5, " +
                                       std::to_string(hi) + ") deg");
                }
                std::uniform_real_distribution<double> first(lo, hi);
                ru.paths[0].aoa_deg = first(rng);
                ru.paths[1].aoa_deg = ru.paths[0].aoa_deg + delta;
            }
            return ru;
        }

        // Objective rebuilt from the materialized Toeplitz block rather than from u(0).
        double recomputed_objective(const ANMSolution &s, const CMatrix &G, const CMatrix &W, double tau)
        {
            const double M_R = static_cast<double>(s.u.size());
            const double tr_toep = toeplitz_materialize(s.u).trace().real();
            return tau / (2.0 * M_R) * tr_toep + 0.5 * tau * s.T.trace().real() +
                   0.5 * (G - W.adjoint() * s.Z).squaredNorm();
        }
    }

    std::optional<TrialResult> run_instance(const ExperimentConfig &cfg, const TrialPoint &point, const PathSet &bs_ris,
                                            const PathSet &ris_ue, std::uint64_t noise_seed)
    {
        SystemDims dims = cfg.dims;
        dims.B = point.frames;
        dims.validate();
        const TrainingSetup setup = default_setup(dims);
        const bool noiseless = !std::isfinite(point.snr_db) && point.snr_db > 0.0;

        TrialResult tr;
        tr.bs_ris = bs_ris;
        tr.ris_ue = ris_ue;
        try
        {
            tr.sigma = noiseless ? 0.0 : sigma_for_snr(bs_ris, ris_ue, point.snr_db);
        }
        catch (const std::domain_error &)
        {
            return std::nullopt;
        }

        const ChannelPair ch = make_channels(bs_ris, ris_ue, dims);
        tr.truth = effective_channel(ch.H_BR, ch.H_RU);
        if (!(tr.truth.H.squaredNorm() > 0.0))
            return std::nullopt;

        for (Estimator est : cfg.estimators)
        {
            EstimateRecord rec{est, {}, 0.0};
            if (est == Estimator::LS)
            {
                if (point.frames != dims.M_R)
                    continue;
                const auto m = run_protocol(ch, setup, full_dft_codebook(dims.M_R), tr.sigma, noise_seed);
                rec.estimate = ls_estimate(m.Y_stack, m.F, m.C, m.W);
            }
            else
            {
                const RisCodebook cb = est == Estimator::ANM
                                           ? adapted_codebook(dims.M_R, point.frames)
                                           : subset_codebook(dims.M_R, point.frames, cfg.subset_strategy);
                const auto m = run_protocol(ch, setup, cb, tr.sigma, noise_seed);
                const double tau = noiseless ? cfg.noiseless_tau_scale * m.G.norm()
                                             : regularization_tau(tr.sigma, dims.D, dims.M_R, dims.M_B, dims.M_U);
                const ANMSolution sol = anm_estimate(m.G, m.W, tau, cfg.solver);
                rec.estimate = sol.channel();
                rec.converged = sol.converged;
                rec.iterations = sol.iterations;
                rec.psd_ratio = min_eigen_ratio(block_matrix(sol.u, sol.Z, sol.T));
                const double again = recomputed_objective(sol, m.G, m.W, tau);
                rec.objective_mismatch = std::abs(again - sol.objective) / std::max(std::abs(again), 1e-300);
            }
            rec.error = normalized_error(rec.estimate, tr.truth);
            tr.estimates.push_back(std::move(rec));
        }
        return tr;
    }

    TrialResult run_trial(const ExperimentConfig &cfg, const TrialPoint &point, std::uint64_t stream)
    {
        for (int attempt = 0; attempt <= cfg.max_resamples; ++attempt)
        {
            Rng rng = substream(cfg.seed, stream, static_cast<std::uint64_t>(attempt));
            std::vector<std::string> warnings;
            const PathSet br = sample_paths(cfg.L_BR, Hop::BsToRis, cfg.angle_lo_deg, cfg.angle_hi_deg, rng);
            const PathSet ru = sample_ris_ue(cfg, point, rng, warnings);
            const std::uint64_t noise_seed = rng();
            if (auto tr = run_instance(cfg, point, br, ru, noise_seed))
            {
                tr->resamples = attempt;
                tr->warnings = std::move(warnings);
                return std::move(*tr);
            }
        }
        throw numeric_failure("no non-degenerate channel instance after " + std::to_string(cfg.max_resamples + 1) +
                              " draws");
    }

    double SweepRow::median() const
    {
        if (errors.empty())
            return 0.0;
        std::vector<double> e = errors;
        const std::size_t mid = e.size() / 2;
        std::nth_element(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(mid), e.end());
        if (e.size() % 2 == 1)
            return e[mid];
        const double upper = e[mid];
        const double lower = *std::max_element(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(mid));
        return 0.5 * (lower + upper);
    }

    double SweepRow::standard_error() const
    {
        const std::size_t n = errors.size();
        if (n < 2)
            return 0.0;
        const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(n);
        double ss = 0.0;
        for (double e : errors)
            ss += (e - mean) * (e - mean);
        return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    }

    const SweepRow *SweepResult::find(double x, Estimator e) const
    {
        for (const auto &r : rows)
            if (r.x == x && r.estimator == e)
                return &r;
        return nullptr;
    }

    SweepResult run_points(const ExperimentConfig &cfg, SweepKind kind, const std::vector<double> &xs, Execution exec)
    {
        cfg.validate(kind);
        SweepResult out;
        out.kind = kind;
        std::set<std::string> warnings;
        const bool serial = exec == Execution::Serial || cfg.solver.trace != nullptr;

        for (double x : xs)
        {
            TrialPoint p;
            p.snr_db = kind == SweepKind::Snr ? x : cfg.snr_db;
            p.frames = kind == SweepKind::Frames ? static_cast<int>(x) : cfg.dims.B;
            if (kind == SweepKind::Separation)
                p.separation_deg = x;

            const int Q = cfg.trials;
            std::vector<TrialResult> results(static_cast<std::size_t>(Q));
            std::exception_ptr failure;
            if (serial)
            {
                for (int q = 0; q < Q; ++q)
                    results[static_cast<std::size_t>(q)] = run_trial(cfg, p, static_cast<std::uint64_t>(q));
            }
            else
            {
#pragma omp parallel for schedule(dynamic)
                for (int q = 0; q < Q; ++q)
                {
                    try
                    {
                        results[static_cast<std::size_t>(q)] = run_trial(cfg, p, static_cast<std::uint64_t>(q));
                    }
                    catch (...)
                    {
#pragma omp critical(risanm_sweep_failure)
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
                if (failure)
                    std::rethrow_exception(failure);
            }

            // aggregate in trial order so the sums do not depend on scheduling
            for (Estimator est : cfg.estimators)
            {
                SweepRow row;
                row.x = x;
                row.estimator = est;
                row.worst_psd_ratio = std::numeric_limits<double>::infinity();
                for (const auto &tr : results)
                {
                    for (const auto &w : tr.warnings)
                        warnings.insert(w);
                    for (const auto &rec : tr.estimates)
                    {
                        if (rec.estimator != est)
                            continue;
                        row.errors.push_back(rec.error);
                        row.failures += tr.resamples;
                        row.unconverged += rec.converged ? 0 : 1;
                        if (est != Estimator::LS)
                        {
                            row.worst_psd_ratio = std::min(row.worst_psd_ratio, rec.psd_ratio);
                            row.worst_objective_mismatch = std::max(row.worst_objective_mismatch, rec.objective_mismatch);
                        }
                    }
                }
                if (row.errors.empty())
                    continue;
                if (est == Estimator::LS)
                    row.worst_psd_ratio = 0.0;
                row.trials_used = static_cast<int>(row.errors.size());
                row.nmse = std::accumulate(row.errors.begin(), row.errors.end(), 0.0) /
                           static_cast<double>(row.errors.size());
                out.rows.push_back(std::move(row));
            }
        }
        out.warnings.assign(warnings.begin(), warnings.end());
        return out;
    }

    SweepResult sweep_separation(const ExperimentConfig &cfg, Execution exec)
    {
        return run_points(cfg, SweepKind::Separation, cfg.separation_deg_list, exec);
    }

    SweepResult sweep_frames(const ExperimentConfig &cfg, Execution exec)
    {
        std::vector<double> xs(cfg.frames_list.begin(), cfg.frames_list.end());
        return run_points(cfg, SweepKind::Frames, xs, exec);
    }

    SweepResult sweep_snr(const ExperimentConfig &cfg, Execution exec)
    {
        return run_points(cfg, SweepKind::Snr, cfg.snr_db_list, exec);
    }

    SweepResult run_sweep(const ExperimentConfig &cfg, SweepKind kind, Execution exec)
    {
        switch (kind)
        {
        case SweepKind::Separation:
            return sweep_separation(cfg, exec);
        case SweepKind::Frames:
            return sweep_frames(cfg, exec);
        case SweepKind::Snr:
            return sweep_snr(cfg, exec);
        }
        throw std::invalid_argument("unknown sweep kind");
    }

    void write_sweep_csv(std::ostream &os, const SweepResult &result)
    {
        char buf[64];
        auto g6 = [&buf](double v) -> const char *
        {
            std::snprintf(buf, sizeof buf, "%.6g", v);
            return buf;
        };
        os << "x,estimator,nmse,trials,failures\n";
        for (const auto &r : result.rows)
        {
            os << g6(r.x) << ',' << to_string(r.estimator) << ',';
            os << g6(r.nmse) << ',' << r.trials_used << ',' << r.failures << '\n';
        }
    }
}
