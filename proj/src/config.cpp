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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

namespace risanm
{
    std::string to_string(Estimator e)
    {
        switch (e)
        {
        case Estimator::LS:
            return "LS";
        case Estimator::ANM:
            return "ANM";
        case Estimator::ANM_NO_ADAPT:
            return "ANM_NO_ADAPT";
        }
        return "?";
    }

    std::string to_string(SweepKind k)
    {
        switch (k)
        {
        case SweepKind::Separation:
            return "separation";
        case SweepKind::Frames:
            return "frames";
        case SweepKind::Snr:
            return "snr";
        }
        return "?";
    }

    Estimator parse_estimator(const std::string &s)
    {
        std::string u = s;
        std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (u == "LS")
            return Estimator::LS;
        if (u == "ANM")
            return Estimator::ANM;
        if (u == "ANM_NO_ADAPT")
            return Estimator::ANM_NO_ADAPT;
        throw config_error("unknown estimator '" + s + "' (expected LS, ANM or ANM_NO_ADAPT)");
    }

    SweepKind parse_sweep_kind(const std::string &s)
    {
        if (s == "separation")
            return SweepKind::Separation;
        if (s == "frames")
            return SweepKind::Frames;
        if (s == "snr")
            return SweepKind::Snr;
        throw config_error("unknown experiment '" + s + "' (expected separation, frames or snr)");
    }

    ExperimentConfig default_config(SweepKind kind)
    {
        ExperimentConfig cfg;
        cfg.dims = SystemDims{};
        cfg.dims.B = 16;
        cfg.L_BR = kind == SweepKind::Frames ? 2 : 1;
        cfg.L_RU = 2;
        return cfg;
    }

    void ExperimentConfig::validate(SweepKind kind) const
    {
        auto need = [](bool ok, const std::string &what)
        {
            if (!ok)
                throw config_error("invalid configuration: " + what);
        };
        try
        {
            dims.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }
        need(dims.M_R >= 2, "M_R must be at least 2");
        need(L_BR >= 1 && L_RU >= 1, "path counts must be positive");
        need(trials >= 1, "trials must be positive");
        need(angle_lo_deg > 0.0 && angle_lo_deg < angle_hi_deg && angle_hi_deg < 180.0,
             "angle window must satisfy 0 < lo < hi < 180");
        need(min_separation_deg >= 0.0 && min_separation_deg < angle_hi_deg - angle_lo_deg,
             "min_separation must be non-negative and smaller than the angle window");
        need(!estimators.empty(), "at least one estimator is required");
        need(noiseless_tau_scale > 0.0, "noiseless_tau_scale must be positive");
        need(max_resamples >= 0, "max_resamples must be non-negative");
        need(std::isfinite(snr_db) || snr_db > 0.0, "snr_db must be finite or +inf");
        try
        {
            solver.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }

        switch (kind)
        {
        case SweepKind::Separation:
            need(L_RU >= 2, "the separation sweep needs L_RU >= 2");
            need(!separation_deg_list.empty(), "separation_list is empty");
            for (double s : separation_deg_list)
                need(s >= 0.0 && s < 179.0, "separations must lie in [0, 179)");
            break;
        case SweepKind::Frames:
            need(!frames_list.empty(), "frames_list is empty");
            for (int b : frames_list)
                need(b >= 1 && b <= dims.M_R, "frame counts must lie in [1, M_R]");
            break;
        case SweepKind::Snr:
            need(!snr_db_list.empty(), "snr_list is empty");
            for (double s : snr_db_list)
                need(std::isfinite(s) || s > 0.0, "SNR values must be finite or +inf");
            break;
        }
    }

    namespace
    {
        std::string trim(const std::string &s)
        {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split_list(const std::string &v)
        {
            std::vector<std::string> out;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
            {
                item = trim(item);
                if (!item.empty())
                    out.push_back(item);
            }
            return out;
        }

        double to_double(const std::string &key, const std::string &v)
        {
            if (v == "inf" || v == "+inf")
                return std::numeric_limits<double>::infinity();
            std::size_t used = 0;
            double x = 0.0;
            try
            {
                x = std::stod(v, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != v.size())
                throw config_error("key '" + key + "': expected a number, got '" + v + "'");
            return x;
        }

        long long to_int(const std::string &key, const std::string &v)
        {
            std::size_t used = 0;
            long long x = 0;
            try
            {
                x = std::stoll(v, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != v.size())
                throw config_error("key '" + key + "': expected an integer, got '" + v + "'");
            return x;
        }

        int to_small_int(const std::string &key, const std::string &v)
        {
            const long long x = to_int(key, v);
            if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
                throw config_error("key '" + key + "': value out of range");
            return static_cast<int>(x);
        }
    }

    void apply_config(ExperimentConfig &cfg, std::istream &in)
    {
        using Setter = std::function<void(const std::string &, const std::string &)>;
        auto int_field = [&](int &f) -> Setter { return [&f](const std::string &k, const std::string &v) { f = to_small_int(k, v); }; };
        auto dbl_field = [&](double &f) -> Setter { return [&f](const std::string &k, const std::string &v) { f = to_double(k, v); }; };

        const std::map<std::string, Setter> setters = {
            {"M_B", int_field(cfg.dims.M_B)},
            {"M_R", int_field(cfg.dims.M_R)},
            {"M_U", int_field(cfg.dims.M_U)},
            {"N_B", int_field(cfg.dims.N_B)},
            {"N_U", int_field(cfg.dims.N_U)},
            {"D", int_field(cfg.dims.D)},
            {"B", int_field(cfg.dims.B)},
            {"L_BR", int_field(cfg.L_BR)},
            {"L_RU", int_field(cfg.L_RU)},
            {"snr_db", dbl_field(cfg.snr_db)},
            {"trials", int_field(cfg.trials)},
            {"angle_lo", dbl_field(cfg.angle_lo_deg)},
            {"angle_hi", dbl_field(cfg.angle_hi_deg)},
            {"min_separation", dbl_field(cfg.min_separation_deg)},
            {"noiseless_tau_scale", dbl_field(cfg.noiseless_tau_scale)},
            {"max_resamples", int_field(cfg.max_resamples)},
            {"solver_penalty", dbl_field(cfg.solver.penalty)},
            {"solver_relaxation", dbl_field(cfg.solver.relaxation)},
            {"solver_max_iterations", int_field(cfg.solver.max_iterations)},
            {"solver_tol", [&cfg](const std::string &k, const std::string &v)
             { cfg.solver.tol_primal = cfg.solver.tol_dual = to_double(k, v); }},
            {"seed", [&cfg](const std::string &k, const std::string &v)
             {
                 const long long s = to_int(k, v);
                 if (s < 0)
                     throw config_error("seed must be non-negative");
                 cfg.seed = static_cast<std::uint64_t>(s);
             }},
            {"snr_list", [&cfg](const std::string &k, const std::string &v)
             {
                 cfg.snr_db_list.clear();
                 for (const auto &s : split_list(v))
                     cfg.snr_db_list.push_back(to_double(k, s));
             }},
            {"frames_list", [&cfg](const std::string &k, const std::string &v)
             {
                 cfg.frames_list.clear();
                 for (const auto &s : split_list(v))
                     cfg.frames_list.push_back(to_small_int(k, s));
             }},
            {"separation_list", [&cfg](const std::string &k, const std::string &v)
             {
                 cfg.separation_deg_list.clear();
                 for (const auto &s : split_list(v))
                     cfg.separation_deg_list.push_back(to_double(k, s));
             }},
            {"estimators", [&cfg](const std::string &, const std::string &v)
             {
                 cfg.estimators.clear();
                 for (const auto &s : split_list(v))
                     cfg.estimators.push_back(parse_estimator(s));
             }},
            {"subset_strategy", [&cfg](const std::string &, const std::string &v)
             {
                 if (v == "first")
                     cfg.subset_strategy = SubsetStrategy::First;
                 else if (v == "even")
                     cfg.subset_strategy = SubsetStrategy::EvenSpaced;
                 else
                     throw config_error("subset_strategy must be 'first' or 'even'");
             }},
            {"output", [&cfg](const std::string &, const std::string &v) { cfg.output = v; }},
        };

        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("line " + std::to_string(lineno) + ": expected key=value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            auto it = setters.find(key);
            if (it == setters.end())
                throw config_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
            it->second(key, value);
        }
    }

    void load_config_file(ExperimentConfig &cfg, const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw config_error("cannot read config file '" + path + "'");
        apply_config(cfg, in);
    }
}
