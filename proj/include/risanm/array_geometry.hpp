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

#ifndef RISANM_ARRAY_GEOMETRY_HPP
#define RISANM_ARRAY_GEOMETRY_HPP

#include "risanm/types.hpp"

#include <optional>
#include <utility>

// Half-wavelength ULA primitives. Angles are in degrees at every public
// boundary; a "spatial frequency" f is the cos-angle coordinate, so that the
// steering phase of element m is pi * m * f.
namespace risanm
{
    struct SpatialFrequency
    {
        double f = 0.0;                              // in [-1, 1)
        std::optional<std::pair<int, int>> origin;   // (BS-RIS path, RIS-UE path) it was composed from

        // Mod-2 representative of x in [-1, 1).
        static double wrap(double x);
        static SpatialFrequency from_angle(double angle_deg);
    };

    constexpr double pi = 3.14159265358979323846;
    inline double deg2rad(double deg) { return deg * pi / 180.0; }

    // a(theta): entry m = exp(i pi m cos theta), m = 0..M-1.
    // Throws std::invalid_argument for non-finite angles, angles outside (0, 180) or M < 1.
    CVector steering_vector(double angle_deg, int M);

    // Steering vector parametrized directly by spatial frequency.
    CVector steering_at_frequency(double f, int M);

    // N x N DFT matrix, entry (k, n) = exp(i 2 pi k n / N).
    CMatrix dft_matrix(int N);

    CMatrix kronecker(const CMatrix &A, const CMatrix &B);

    // Column-wise Kronecker product. Throws if the column counts differ.
    CMatrix khatri_rao_cols(const CMatrix &A, const CMatrix &B);

    // Frequency of the composed RIS atom, wrap(cos theta_RU - cos phi_BR).
    SpatialFrequency compose_frequency(double theta_RU_deg, double phi_BR_deg);
}

#endif
