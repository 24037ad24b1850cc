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

#include "risanm/ris_codebook.hpp"
#include "risanm/array_geometry.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace risanm
{
    namespace
    {
        void check_frames(int M_R, int B)
        {
            if (M_R < 1)
                throw std::invalid_argument("RIS element count must be positive");
            if (B < 1 || B > M_R)
                throw std::invalid_argument("frame count must lie in [1, M_R]");
        }
    }

    RisCodebook full_dft_codebook(int M_R)
    {
        return {dft_matrix(M_R), CodebookKind::FullDft, M_R};
    }

    RisCodebook adapted_codebook(int M_R, int B)
    {
        check_frames(M_R, B);
        CMatrix W = CMatrix::Zero(M_R, B);
        W.topRows(B) = dft_matrix(B);
        return {std::move(W), CodebookKind::Adapted, B};
    }

    std::vector<int> subset_columns(int M_R, int B, SubsetStrategy strategy)
    {
        check_frames(M_R, B);
        std::vector<int> cols(static_cast<std::size_t>(B));
        for (int k = 0; k < B; ++k)
            cols[static_cast<std::size_t>(k)] =
                strategy == SubsetStrategy::First ? k : static_cast<int>((static_cast<long long>(k) * M_R) / B);
        return cols;
    }

    RisCodebook subset_codebook(int M_R, int B, SubsetStrategy strategy)
    {
        const auto cols = subset_columns(M_R, B, strategy);
        const CMatrix Psi = dft_matrix(M_R);
        CMatrix W(M_R, B);
        for (int k = 0; k < B; ++k)
            W.col(k) = Psi.col(cols[static_cast<std::size_t>(k)]);
        return {std::move(W), CodebookKind::Subset, M_R};
    }

    std::vector<double> beam_gain(const CVector &omega, std::span<const double> f_grid)
    {
        std::vector<double> g;
        g.reserve(f_grid.size());
        const int M = static_cast<int>(omega.size());
        for (double f : f_grid)
        {
            cplx acc = 0.0;
            for (int m = 0; m < M; ++m)
                acc += std::polar(1.0, pi * m * f) * omega(m);
            g.push_back(std::abs(acc));
        }
        return g;
    }

    std::vector<double> frequency_grid(int n)
    {
        if (n < 1)
            throw std::invalid_argument("grid size must be positive");
        std::vector<double> f(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            f[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / n;
        return f;
    }

    CoverageReport coverage_check(const RisCodebook &codebook, int grid_size, double threshold_fraction)
    {
        if (grid_size < 2 * codebook.elements())
            throw std::invalid_argument("coverage grid must have at least 2 * M_R points");
        const auto grid = frequency_grid(grid_size);
        std::vector<double> best(grid.size(), 0.0);
        for (int b = 0; b < codebook.frames(); ++b)
        {
            const auto g = beam_gain(codebook.W.col(b), grid);
            for (std::size_t i = 0; i < g.size(); ++i)
                best[i] = std::max(best[i], g[i]);
        }
        CoverageReport rep;
        rep.worst_gain = *std::min_element(best.begin(), best.end());
        rep.ok = rep.worst_gain >= threshold_fraction * codebook.active_count;
        return rep;
    }

    void write_pattern_csv(std::ostream &os, std::span<const double> f_grid, std::span<const double> gain)
    {
        if (f_grid.size() != gain.size())
            throw std::invalid_argument("pattern CSV: grid and gain lengths differ");
        os << "f,gain\n";
        os << std::setprecision(std::numeric_limits<double>::max_digits10);
        for (std::size_t i = 0; i < f_grid.size(); ++i)
            os << f_grid[i] << ',' << gain[i] << '\n';
    }
}
