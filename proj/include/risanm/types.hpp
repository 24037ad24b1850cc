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

#ifndef RISANM_TYPES_HPP
#define RISANM_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace risanm
{
    using cplx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RVector = Eigen::VectorXd;

    // Pseudo-random source used everywhere a draw is needed. Passed explicitly, never global.
    using Rng = std::mt19937_64;

    // Raised when a numerical routine cannot produce a meaningful result
    // (singular matrix, failed eigendecomposition, NaN iterates).
    class numeric_failure : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Raised when the call is well-formed but the estimator cannot apply,
    // e.g. LS with fewer frames than RIS elements.
    class precondition_violation : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    // Independent substream derived from a master seed and up to three indices.
    // Same arguments give the same stream on every run and thread.
    Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

    // Circularly-symmetric complex Gaussian with E|x|^2 = variance.
    cplx complex_normal(Rng &rng, double variance = 1.0);

    // Relative Frobenius error ||a - b|| / ||b||; returns ||a|| when b is zero.
    double relative_error(const CMatrix &a, const CMatrix &b);
}

#endif
