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

#ifndef RISANM_BEAM_TRAINING_HPP
#define RISANM_BEAM_TRAINING_HPP

#include "risanm/channel_model.hpp"
#include "risanm/ris_codebook.hpp"
#include "risanm/types.hpp"

#include <cstdint>
#include <iosfwd>

namespace risanm
{
    // N_B x D pilot block with S S^H / D = I.
    struct PilotMatrix
    {
        CMatrix S;

        int streams() const { return static_cast<int>(S.rows()); }
        int samples() const { return static_cast<int>(S.cols()); }
    };

    // Full precoder F (M_B x M_B), full combiner C (M_U x M_U) and pilots.
    // F_i and C_j are the contiguous column blocks of width N_B and N_U.
    struct TrainingSetup
    {
        SystemDims dims;
        CMatrix F;
        CMatrix C;
        PilotMatrix pilots;
    };

    struct CompiledMeasurement
    {
        CMatrix Y_stack; // (M_B M_U) x B, column b = vec(Y_b)
        CMatrix G;       // B x (M_B M_U), decoupled measurement
        CMatrix F;
        CMatrix C;
        CMatrix W;
        double sigma = 0.0;
        SystemDims dims;
    };

    // First N_B rows of the D-point DFT. Throws if D < N_B.
    PilotMatrix pilot_matrix(int N_B, int D);

    // Unitary DFT precoder/combiner and DFT pilots for the given dimensions.
    TrainingSetup default_setup(const SystemDims &dims);

    // One training: C_j^H H_RU diag(omega) H_BR F_i S + N with N ~ CN(0, sigma^2).
    CMatrix simulate_training(const ChannelPair &channels, const CMatrix &F_i, const CMatrix &C_j, const CVector &omega,
                              const PilotMatrix &S, double sigma, Rng &rng);

    // X S^H / D.
    CMatrix matched_filter(const CMatrix &X, const PilotMatrix &S);

    // All P_B P_U trainings of one frame, compiled into the M_U x M_B block matrix Y_b.
    CMatrix run_frame(const ChannelPair &channels, const TrainingSetup &setup, const CVector &omega, double sigma,
                      Rng &rng);

    // Every frame of the codebook. Frame b draws its noise from substream(seed, b),
    // so the result does not depend on the order frames are simulated in.
    CompiledMeasurement run_protocol(const ChannelPair &channels, const TrainingSetup &setup,
                                     const RisCodebook &codebook, double sigma, std::uint64_t seed);

    // ((F^T kron C^H)^-1 Y_stack)^H, applied as C^-H Y_b F^-1 per frame.
    // Throws numeric_failure when F or C is numerically singular.
    CMatrix decouple(const CMatrix &Y_stack, const CMatrix &F, const CMatrix &C);

    // 2-norm condition number; infinity for singular input.
    double condition_number(const CMatrix &A);

    // Offline dump of G, W and sigma. Complex entries are written as "re+imj".
    void write_measurement_csv(std::ostream &os, const CompiledMeasurement &m);
    CompiledMeasurement read_measurement_csv(std::istream &is);

    std::string format_complex(cplx z);
    cplx parse_complex(const std::string &s);
}

#endif
