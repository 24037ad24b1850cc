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

#ifndef RISANM_ANM_ESTIMATION_HPP
#define RISANM_ANM_ESTIMATION_HPP

#include "risanm/channel_model.hpp"
#include "risanm/types.hpp"

#include <iosfwd>

namespace risanm
{
    // Tuning of the operator-splitting SDP solver.
    //
    // The penalty is the initial augmented-Lagrangian weight relative to the
    // (normalized) regularization strength; it is rebalanced during the run
    // whenever the primal and dual residuals drift apart. Tolerances are
    // relative to the norms of the iterates.
    struct SolverOptions
    {
        double penalty = 0.3;
        double relaxation = 1.8; // over-relaxation of the consensus step, in (0, 2)
        int max_iterations = 5000;
        double tol_primal = 1e-6;
        double tol_dual = 1e-6;
        double tol_psd = 1e-6;
        bool adaptive_penalty = true;
        std::ostream *trace = nullptr; // "iteration,objective,primal_residual,dual_residual" rows when set

        void validate() const;
    };

    struct ANMSolution
    {
        CVector u;  // first column of the Hermitian Toeplitz block, u(0) real
        CMatrix T;  // (M_B M_U) x (M_B M_U)
        CMatrix Z;  // M_R x (M_B M_U)
        double objective = 0.0;
        int iterations = 0;
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        bool converged = false;

        // Estimated effective channel, Z^H.
        EffectiveChannel channel() const { return {Z.adjoint()}; }
    };

    // Hermitian Toeplitz matrix with first column u.
    CMatrix toeplitz_materialize(const CVector &u);

    // Adjoint of toeplitz_materialize under the real inner product Re tr(A^H B):
    // entry k collects diagonal k of M plus the conjugate of diagonal -k.
    CVector toeplitz_adjoint(const CMatrix &M);

    // Nearest positive semidefinite matrix in Frobenius norm.
    CMatrix psd_project(const CMatrix &M);

    // Smallest eigenvalue of a Hermitian matrix divided by max(1e-300, largest |eigenvalue|).
    double min_eigen_ratio(const CMatrix &M);

    // Regularization weight for noise level sigma after matched filtering over D samples.
    // Uses natural logarithms; requires M_R >= 2.
    double regularization_tau(double sigma, int D, int M_R, int M_B, int M_U);

    // (F^T kron C^H)^-1 Y_stack W^-1. Requires a square, invertible W (B = M_R).
    EffectiveChannel ls_estimate(const CMatrix &Y_stack, const CMatrix &F, const CMatrix &C, const CMatrix &W);

    // tau/(2 M_R) tr Toep(u) + tau/2 tr T + 1/2 ||G - W^H Z||_F^2.
    double anm_objective(const CVector &u, const CMatrix &T, const CMatrix &Z, const CMatrix &G, const CMatrix &W,
                         double tau);

    // [[Toep(u), Z], [Z^H, T]].
    CMatrix block_matrix(const CVector &u, const CMatrix &Z, const CMatrix &T);

    // Regularized atomic norm denoising of G ~ W^H Z. A solution that runs
    // out of iterations is still returned, with converged = false.
    ANMSolution anm_estimate(const CMatrix &G, const CMatrix &W, double tau, const SolverOptions &opts = {});

    // Atomic norm of Z over atoms a(f) b^T, ||b||_2 = 1, evaluated through its SDP form.
    double atomic_norm(const CMatrix &Z, const SolverOptions &opts = {});

    // Unit-modulus RIS control from the dominant right singular vector of the
    // effective channel, with entry 0 rotated to be real positive.
    CVector design_ris_control(const EffectiveChannel &H_eff);
}

#endif
