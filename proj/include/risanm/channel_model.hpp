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

#ifndef RISANM_CHANNEL_MODEL_HPP
#define RISANM_CHANNEL_MODEL_HPP

#include "risanm/types.hpp"

#include <vector>

namespace risanm
{
    // Array sizes, RF chains, pilot length and frame count of one training setup.
    struct SystemDims
    {
        int M_B = 8;  // BS antennas
        int M_R = 32; // RIS elements
        int M_U = 4;  // UE antennas
        int N_B = 4;  // BS RF chains
        int N_U = 2;  // UE RF chains
        int D = 16;   // pilot samples per training
        int B = 16;   // frames (RIS beams)

        int P_B() const { return M_B / N_B; }
        int P_U() const { return M_U / N_U; }
        int trainings_per_frame() const { return P_B() * P_U(); }
        int total_trainings() const { return B * trainings_per_frame(); }
        int link_dim() const { return M_B * M_U; }

        // Throws std::invalid_argument naming the first violated constraint.
        void validate() const;
    };

    enum class Hop
    {
        BsToRis,
        RisToUe
    };

    struct Path
    {
        double aoa_deg;
        double aod_deg;
        cplx gain;
    };

    struct PathSet
    {
        std::vector<Path> paths;
        Hop hop = Hop::BsToRis;

        std::size_t size() const { return paths.size(); }
        cplx gain_sum() const;
        void validate() const;
    };

    struct ChannelPair
    {
        CMatrix H_BR; // M_R x M_B
        CMatrix H_RU; // M_U x M_R
        PathSet bs_ris;
        PathSet ris_ue;
    };

    // Target of estimation, H_BR^T (Khatri-Rao) H_RU, size (M_B M_U) x M_R.
    struct EffectiveChannel
    {
        CMatrix H;
    };

    // L paths with i.i.d. uniform angles on [lo, hi] and CN(0, 1) gains.
    PathSet sample_paths(int L, Hop hop, double angle_lo_deg, double angle_hi_deg, Rng &rng);

    // sum_l gain_l a_rx(aoa_l) a_tx(aod_l)^H, size M_rx x M_tx.
    CMatrix build_channel(const PathSet &paths, int M_rx, int M_tx);

    ChannelPair make_channels(const PathSet &bs_ris, const PathSet &ris_ue, const SystemDims &dims);

    // H_RU diag(omega) H_BR.
    CMatrix cascaded_channel(const CMatrix &H_RU, const CVector &omega, const CMatrix &H_BR);

    EffectiveChannel effective_channel(const CMatrix &H_BR, const CMatrix &H_RU);

    // Numerical rank using singular values above threshold * sigma_max.
    int numerical_rank(const CMatrix &A, double threshold = 1e-9);
}

#endif
