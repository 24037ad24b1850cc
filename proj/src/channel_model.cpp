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

#include "risanm/channel_model.hpp"
#include "risanm/array_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risanm
{
    void SystemDims::validate() const
    {
        auto need = [](bool ok, const char *what)
        {
            if (!ok)
                throw std::invalid_argument(std::string("invalid dimensions: ") + what);
        };
        need(M_B >= 1 && M_R >= 1 && M_U >= 1, "antenna counts must be positive");
        need(N_B >= 1 && N_U >= 1, "RF chain counts must be positive");
        need(M_B % N_B == 0, "M_B must be a multiple of N_B");
        need(M_U % N_U == 0, "M_U must be a multiple of N_U");
        need(D >= N_B, "pilot length D must be at least N_B");
        need(B >= 1 && B <= M_R, "frame count B must lie in [1, M_R]");
    }

    cplx PathSet::gain_sum() const
    {
        cplx s = 0.0;
        for (const auto &p : paths)
            s += p.gain;
        return s;
    }

    void PathSet::validate() const
    {
        if (paths.empty())
            throw std::invalid_argument("path set is empty");
        for (const auto &p : paths)
        {
            if (!(p.aoa_deg > 0.0 && p.aoa_deg < 180.0 && p.aod_deg > 0.0 && p.aod_deg < 180.0))
                throw std::invalid_argument("path angles must lie in (0, 180) degrees");
            if (!std::isfinite(p.gain.real()) || !std::isfinite(p.gain.imag()))
                throw std::invalid_argument("path gain must be finite");
        }
    }

    PathSet sample_paths(int L, Hop hop, double angle_lo_deg, double angle_hi_deg, Rng &rng)
    {
        if (L < 1)
            throw std::invalid_argument("path count must be positive");
        if (!(angle_lo_deg > 0.0 && angle_lo_deg < angle_hi_deg && angle_hi_deg < 180.0))
            throw std::invalid_argument("angle range must satisfy 0 < lo < hi < 180");

        std::uniform_real_distribution<double> angle(angle_lo_deg, angle_hi_deg);
        PathSet ps;
        ps.hop = hop;
        ps.paths.reserve(static_cast<std::size_t>(L));
        for (int l = 0; l < L; ++l)
        {
            Path p{};
            p.aoa_deg = angle(rng);
            p.aod_deg = angle(rng);
            p.gain = complex_normal(rng);
            ps.paths.push_back(p);
        }
        return ps;
    }

    CMatrix build_channel(const PathSet &paths, int M_rx, int M_tx)
    {
        if (M_rx < 1 || M_tx < 1)
            throw std::invalid_argument("channel dimensions must be positive");
        paths.validate();
        CMatrix H = CMatrix::Zero(M_rx, M_tx);
        for (const auto &p : paths.paths)
            H.noalias() += p.gain * steering_vector(p.aoa_deg, M_rx) * steering_vector(p.aod_deg, M_tx).adjoint();
        return H;
    }

    ChannelPair make_channels(const PathSet &bs_ris, const PathSet &ris_ue, const SystemDims &dims)
    {
        ChannelPair ch;
        ch.H_BR = build_channel(bs_ris, dims.M_R, dims.M_B);
        ch.H_RU = build_channel(ris_ue, dims.M_U, dims.M_R);
        ch.bs_ris = bs_ris;
        ch.ris_ue = ris_ue;
        return ch;
    }

    CMatrix cascaded_channel(const CMatrix &H_RU, const CVector &omega, const CMatrix &H_BR)
    {
        if (H_RU.cols() != omega.size() || H_BR.rows() != omega.size())
            throw std::invalid_argument("cascaded channel: RIS dimension mismatch");
        return H_RU * omega.asDiagonal() * H_BR;
    }

    EffectiveChannel effective_channel(const CMatrix &H_BR, const CMatrix &H_RU)
    {
        if (H_BR.rows() != H_RU.cols())
            throw std::invalid_argument("effective channel: RIS dimension mismatch");
        return {khatri_rao_cols(H_BR.transpose(), H_RU)};
    }

    int numerical_rank(const CMatrix &A, double threshold)
    {
        if (A.size() == 0)
            return 0;
        Eigen::JacobiSVD<CMatrix> svd(A);
        const RVector &s = svd.singularValues();
        if (s(0) == 0.0)
            return 0;
        int r = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > threshold * s(0))
                ++r;
        return r;
    }
}
