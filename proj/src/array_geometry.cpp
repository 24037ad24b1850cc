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

#include "risanm/array_geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risanm
{
    double SpatialFrequency::wrap(double x)
    {
        double r = std::fmod(x + 1.0, 2.0);
        if (r < 0.0)
            r += 2.0;
        r -= 1.0;
        // fmod can return exactly 2 - eps rounding to 1.0 after the shift
        if (r >= 1.0)
            r -= 2.0;
        return r;
    }

    SpatialFrequency SpatialFrequency::from_angle(double angle_deg)
    {
        return {wrap(std::cos(deg2rad(angle_deg))), std::nullopt};
    }

    CVector steering_at_frequency(double f, int M)
    {
        if (M < 1)
            throw std::invalid_argument("steering vector length must be positive");
        if (!std::isfinite(f))
            throw std::invalid_argument("spatial frequency must be finite");
        CVector a(M);
        for (int m = 0; m < M; ++m)
            a(m) = std::polar(1.0, pi * m * f);
        return a;
    }

    CVector steering_vector(double angle_deg, int M)
    {
        if (!std::isfinite(angle_deg) || angle_deg <= 0.0 || angle_deg >= 180.0)
            throw std::invalid_argument("steering angle must lie in (0, 180) degrees, got " + std::to_string(angle_deg));
        return steering_at_frequency(std::cos(deg2rad(angle_deg)), M);
    }

    CMatrix dft_matrix(int N)
    {
        if (N < 1)
            throw std::invalid_argument("DFT size must be positive");
        CMatrix Psi(N, N);
        for (int k = 0; k < N; ++k)
            for (int n = 0; n < N; ++n)
            {
                // reduce k*n mod N first so the phase stays exact for large N
                long long kn = (static_cast<long long>(k) * n) % N;
                Psi(k, n) = std::polar(1.0, 2.0 * pi * static_cast<double>(kn) / N);
            }
        return Psi;
    }

    CMatrix kronecker(const CMatrix &A, const CMatrix &B)
    {
        const Eigen::Index mb = B.rows(), nb = B.cols();
        CMatrix K(A.rows() * mb, A.cols() * nb);
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            for (Eigen::Index j = 0; j < A.cols(); ++j)
                K.block(i * mb, j * nb, mb, nb) = A(i, j) * B;
        return K;
    }

    CMatrix khatri_rao_cols(const CMatrix &A, const CMatrix &B)
    {
        if (A.cols() != B.cols())
            throw std::invalid_argument("Khatri-Rao product needs equal column counts (" + std::to_string(A.cols()) +
                                        " vs " + std::to_string(B.cols()) + ")");
        const Eigen::Index mb = B.rows();
        CMatrix K(A.rows() * mb, A.cols());
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                K.col(j).segment(i * mb, mb) = A(i, j) * B.col(j);
        return K;
    }

    SpatialFrequency compose_frequency(double theta_RU_deg, double phi_BR_deg)
    {
        double f = std::cos(deg2rad(theta_RU_deg)) - std::cos(deg2rad(phi_BR_deg));
        return {SpatialFrequency::wrap(f), std::nullopt};
    }
}
