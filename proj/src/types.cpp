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

#include "risanm/types.hpp"

#include <array>
#include <cmath>

namespace risanm
{
    Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        // seed_seq only consumes 32-bit words
        std::array<std::uint32_t, 8> words = {
            static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
            static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
            static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::seed_seq seq(words.begin(), words.end());
        return Rng(seq);
    }

    cplx complex_normal(Rng &rng, double variance)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5 * variance));
        double re = n(rng);
        double im = n(rng);
        return {re, im};
    }

    double relative_error(const CMatrix &a, const CMatrix &b)
    {
        double den = b.norm();
        double num = (a - b).norm();
        return den > 0.0 ? num / den : num;
    }
}
