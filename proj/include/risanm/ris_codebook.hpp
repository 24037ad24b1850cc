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

#ifndef RISANM_RIS_CODEBOOK_HPP
#define RISANM_RIS_CODEBOOK_HPP

#include "risanm/types.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace risanm
{
    enum class CodebookKind
    {
        FullDft,
        Adapted,
        Subset
    };

    enum class SubsetStrategy
    {
        First,
        EvenSpaced
    };

    // One RIS control vector per column. Entries are 0 (element off) or unit modulus.
    struct RisCodebook
    {
        CMatrix W; // M_R x B
        CodebookKind kind = CodebookKind::FullDft;
        int active_count = 0;

        int elements() const { return static_cast<int>(W.rows()); }
        int frames() const { return static_cast<int>(W.cols()); }
    };

    RisCodebook full_dft_codebook(int M_R);

    // Training beamwidth adaptation: only the first B elements are active and
    // they carry a B-point DFT, giving B beams wide enough to tile [-1, 1).
    RisCodebook adapted_codebook(int M_R, int B);

    // B columns of the full M_R-point DFT with every element active.
    RisCodebook subset_codebook(int M_R, int B, SubsetStrategy strategy = SubsetStrategy::EvenSpaced);

    // Column indices picked by subset_codebook.
    std::vector<int> subset_columns(int M_R, int B, SubsetStrategy strategy);

    // |a_f^T omega| for every frequency of the grid.
    std::vector<double> beam_gain(const CVector &omega, std::span<const double> f_grid);

    // n points uniformly spaced on [-1, 1).
    std::vector<double> frequency_grid(int n);

    struct CoverageReport
    {
        bool ok = false;
        double worst_gain = 0.0; // min over grid of the best beam's gain
    };

    // Checks that every frequency on a grid_size-point grid is covered by
    // some beam with gain >= threshold_fraction * active_count.
    CoverageReport coverage_check(const RisCodebook &codebook, int grid_size = 1024, double threshold_fraction = 0.6);

    // Two-column "f,gain" CSV for pattern plots.
    void write_pattern_csv(std::ostream &os, std::span<const double> f_grid, std::span<const double> gain);
}

#endif
