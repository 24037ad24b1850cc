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

#include "risanm/anm_estimation.hpp"
#include "risanm/array_geometry.hpp"
#include "risanm/beam_training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace risanm
{
    void SolverOptions::validate() const
    {
        if (!(penalty > 0.0) || max_iterations < 1 || !(tol_primal > 0.0) || !(tol_dual > 0.0) || !(tol_psd > 0.0))
            throw std::invalid_argument("solver options must all be positive");
        if (!(relaxation > 0.0 && relaxation < 2.0))
            throw std::invalid_argument("relaxation factor must lie in (0, 2)");
    }

    CMatrix toeplitz_materialize(const CVector &u)
    {
        const Eigen::Index n = u.size();
        CMatrix T(n, n);
        for (Eigen::Index q = 0; q < n; ++q)
            for (Eigen::Index p = 0; p < n; ++p)
                T(p, q) = p >= q ? u(p - q) : std::conj(u(q - p));
        return T;
    }

    CVector toeplitz_adjoint(const CMatrix &M)
    {
        if (M.rows() != M.cols())
            throw std::invalid_argument("Toeplitz adjoint needs a square matrix");
        const Eigen::Index n = M.rows();
        CVector u = CVector::Zero(n);
        for (Eigen::Index q = 0; q < n; ++q)
            for (Eigen::Index p = 0; p < n; ++p)
            {
                if (p >= q)
                    u(p - q) += M(p, q);
                else
                    u(q - p) += std::conj(M(p, q));
            }
        return u;
    }

    namespace
    {
        CMatrix hermitian_part(const CMatrix &M) { return 0.5 * (M + M.adjoint()); }

        void require_hermitian(const CMatrix &M)
        {
            if (M.rows() != M.cols())
                throw std::invalid_argument("expected a square matrix");
            if ((M - M.adjoint()).norm() > 1e-10 * std::max(1.0, M.norm()))
                throw std::invalid_argument("expected a Hermitian matrix");
        }

        CMatrix project_hermitian(const CMatrix &H)
        {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
            if (es.info() != Eigen::Success)
                throw numeric_failure("eigendecomposition failed in PSD projection");
            const RVector lam = es.eigenvalues().cwiseMax(0.0);
            const CMatrix &V = es.eigenvectors();
            return V * lam.asDiagonal() * V.adjoint();
        }
    }

    CMatrix psd_project(const CMatrix &M)
    {
        require_hermitian(M);
        return hermitian_part(project_hermitian(hermitian_part(M)));
    }

    double min_eigen_ratio(const CMatrix &M)
    {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(M), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw numeric_failure("eigendecomposition failed");
        const RVector &lam = es.eigenvalues();
        const double scale = std::max(1e-300, lam.cwiseAbs().maxCoeff());
        return lam(0) / scale;
    }

    double regularization_tau(double sigma, int D, int M_R, int M_B, int M_U)
    {
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw std::invalid_argument("tau: noise level must be finite and non-negative");
        if (D < 1 || M_B < 1 || M_U < 1)
            throw std::invalid_argument("tau: dimensions must be positive");
        if (M_R < 2)
            throw std::invalid_argument("tau: needs M_R >= 2 so that log M_R > 0");
        const double n = static_cast<double>(M_B) * M_U;
        const double logm = std::log(static_cast<double>(M_R));
        const double alpha = 8.0 * pi * M_R * logm;
        const double la = std::log(alpha * n);
        const double inner = n + la + std::sqrt(2.0 * n * la) + std::sqrt(pi * n / 2.0) + 1.0;
        return sigma / std::sqrt(static_cast<double>(D)) * std::sqrt(1.0 + 1.0 / logm) * std::sqrt(inner);
    }

    EffectiveChannel ls_estimate(const CMatrix &Y_stack, const CMatrix &F, const CMatrix &C, const CMatrix &W)
    {
        if (W.cols() < W.rows())
            throw precondition_violation("LS needs at least M_R frames (B = " + std::to_string(W.cols()) +
                                         " < M_R = " + std::to_string(W.rows()) + ")");
        if (W.cols() != W.rows())
            throw std::invalid_argument("LS expects a square RIS codebook");
        if (Y_stack.cols() != W.cols())
            throw std::invalid_argument("LS: frame count of measurement and codebook differ");
        const double k = condition_number(W);
        if (!(k < 1e12))
            throw numeric_failure("LS: RIS codebook is singular (condition number " + std::to_string(k) + ")");
        // decouple returns (K^-1 Y)^H, so H W = G^H, i.e. W^H H^H = G
        const CMatrix G = decouple(Y_stack, F, C);
        const CMatrix Hh = Eigen::PartialPivLU<CMatrix>(W.adjoint()).solve(G);
        return {Hh.adjoint()};
    }

    double anm_objective(const CVector &u, const CMatrix &T, const CMatrix &Z, const CMatrix &G, const CMatrix &W,
                         double tau)
    {
        // tr Toep(u) / M_R = Re u(0)
        const double fit = (G - W.adjoint() * Z).squaredNorm();
        return 0.5 * tau * u(0).real() + 0.5 * tau * T.trace().real() + 0.5 * fit;
    }

    CMatrix block_matrix(const CVector &u, const CMatrix &Z, const CMatrix &T)
    {
        const Eigen::Index M = u.size(), N = T.rows();
        if (Z.rows() != M || Z.cols() != N || T.cols() != N)
            throw std::invalid_argument("block matrix: blocks do not conform");
        CMatrix X(M + N, M + N);
        X.topLeftCorner(M, M) = toeplitz_materialize(u);
        X.topRightCorner(M, N) = Z;
        X.bottomLeftCorner(N, M) = Z.adjoint();
        X.bottomRightCorner(N, N) = T;
        return X;
    }

    namespace
    {
        // min  w_u Re u0 + w_T tr T [+ 1/2 ||G - W^H Z||^2]
        // s.t. [[Toep(u), Z], [Z^H, T]] psd
        // Without data the Z block is held at z_fixed.
        struct SplitProblem
        {
            Eigen::Index M = 0;
            Eigen::Index N = 0;
            double weight_u = 0.0;
            double weight_T = 0.0;
            const CMatrix *G = nullptr;
            const CMatrix *W = nullptr;
            const CMatrix *z_fixed = nullptr;
        };

        struct SplitResult
        {
            CVector u;
            CMatrix Z;
            CMatrix T;
            int iterations = 0;
            double primal_residual = 0.0;
            double dual_residual = 0.0;
            bool converged = false;
        };

        double split_objective(const SplitProblem &p, const CVector &u, const CMatrix &Z, const CMatrix &T)
        {
            double obj = p.weight_u * u(0).real() + p.weight_T * T.trace().real();
            if (p.G)
                obj += 0.5 * (*p.G - p.W->adjoint() * Z).squaredNorm();
            return obj;
        }

        bool finite(const CMatrix &A) { return A.allFinite(); }

        SplitResult solve_split(const SplitProblem &p, const SolverOptions &opts, double scale_hint)
        {
            const Eigen::Index M = p.M, N = p.N, K = M + N;

            // Toeplitz Gram weights: ||Toep(u)||^2 = sum_k w_k |u_k|^2
            RVector w(M);
            w(0) = static_cast<double>(M);
            for (Eigen::Index k = 1; k < M; ++k)
                w(k) = 2.0 * static_cast<double>(M - k);

            double rho = opts.penalty * std::max(scale_hint, 1e-8);

            CMatrix WG, WWh;
            Eigen::LLT<CMatrix> llt;
            auto refactor = [&]()
            {
                if (p.G)
                    llt.compute(WWh + 2.0 * rho * CMatrix::Identity(M, M));
            };
            if (p.G)
            {
                WG = (*p.W) * (*p.G);
                WWh = (*p.W) * p.W->adjoint();
            }
            refactor();

            CMatrix S = CMatrix::Zero(K, K);
            CMatrix Lam = CMatrix::Zero(K, K);
            CVector u = CVector::Zero(M);
            CMatrix Z = p.z_fixed ? *p.z_fixed : CMatrix::Zero(M, N);
            CMatrix T = CMatrix::Zero(N, N);
            CMatrix X(K, K), S_prev(K, K);

            SplitResult res;
            for (int it = 1; it <= opts.max_iterations; ++it)
            {
                T = S.bottomRightCorner(N, N) - Lam.bottomRightCorner(N, N) / rho;
                T.diagonal().array() -= p.weight_T / rho;
                T = hermitian_part(T);

                CVector c = toeplitz_adjoint(S.topLeftCorner(M, M) - Lam.topLeftCorner(M, M) / rho);
                c(0) -= p.weight_u / rho;
                u = c.cwiseQuotient(w.cast<cplx>());
                u(0) = u(0).real();

                if (p.G)
                    Z = llt.solve(WG + 2.0 * rho * S.topRightCorner(M, N) - 2.0 * Lam.topRightCorner(M, N));

                X = block_matrix(u, Z, T);
                S_prev = S;
                const CMatrix Xr = opts.relaxation * X + (1.0 - opts.relaxation) * S_prev;
                S = hermitian_part(project_hermitian(Xr + Lam / rho));
                Lam += rho * (Xr - S);
                Lam = hermitian_part(Lam);

                if (!finite(Lam) || !finite(X))
                    throw numeric_failure("ANM solver produced non-finite iterates at iteration " + std::to_string(it));

                const double r_p = (X - S).norm();
                const double r_d = rho * (S - S_prev).norm();
                const double eps_p = opts.tol_primal * std::max({X.norm(), S.norm(), 1e-12});
                const double eps_d = opts.tol_dual * std::max({Lam.norm(), 1e-12});

                res.iterations = it;
                res.primal_residual = r_p;
                res.dual_residual = r_d;

                if (opts.trace)
                    *opts.trace << it << ',' << split_objective(p, u, Z, T) << ',' << r_p / std::max(eps_p / opts.tol_primal, 1e-300)
                                << ',' << r_d / std::max(eps_d / opts.tol_dual, 1e-300) << '\n';

                if (r_p <= eps_p && r_d <= eps_d)
                {
                    res.converged = true;
                    break;
                }

                if (opts.adaptive_penalty && it % 50 == 0)
                {
                    // balance the relative residuals
                    const double rel_p = r_p / eps_p * opts.tol_primal;
                    const double rel_d = r_d / eps_d * opts.tol_dual;
                    if (rel_p > 10.0 * rel_d)
                    {
                        rho *= 2.0;
                        refactor();
                    }
                    else if (rel_d > 10.0 * rel_p)
                    {
                        rho *= 0.5;
                        refactor();
                    }
                }
            }

            res.u = std::move(u);
            res.Z = std::move(Z);
            res.T = std::move(T);
            return res;
        }

        // Shift the diagonal blocks until the block matrix is psd to rounding.
        void repair_psd(SplitResult &r)
        {
            const CMatrix X = block_matrix(r.u, r.Z, r.T);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(X, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success)
                throw numeric_failure("eigendecomposition failed while finalizing the ANM solution");
            const double lo = es.eigenvalues()(0);
            if (lo < 0.0)
            {
                const double shift = -lo * (1.0 + 1e-9);
                r.u(0) += shift;
                r.T.diagonal().array() += shift;
            }
        }
    }

    ANMSolution anm_estimate(const CMatrix &G, const CMatrix &W, double tau, const SolverOptions &opts)
    {
        opts.validate();
        if (!(tau >= 0.0) || !std::isfinite(tau))
            throw std::invalid_argument("ANM: tau must be finite and non-negative");
        if (W.cols() != G.rows() || W.cols() > W.rows() || W.rows() < 1 || G.cols() < 1)
            throw std::invalid_argument("ANM: expected W of size M_R x B and G of size B x (M_B M_U) with B <= M_R");
        if (!G.allFinite() || !W.allFinite())
            throw numeric_failure("ANM: non-finite input");

        const Eigen::Index M = W.rows(), N = G.cols();
        ANMSolution sol;
        const double scale = G.norm();
        if (scale == 0.0)
        {
            sol.u = CVector::Zero(M);
            sol.T = CMatrix::Zero(N, N);
            sol.Z = CMatrix::Zero(M, N);
            sol.converged = true;
            return sol;
        }

        const CMatrix Gn = G / scale;
        const double tau_n = tau / scale;
        SplitProblem p;
        p.M = M;
        p.N = N;
        p.weight_u = 0.5 * tau_n;
        p.weight_T = 0.5 * tau_n;
        p.G = &Gn;
        p.W = &W;

        SplitResult r = solve_split(p, opts, tau_n);
        repair_psd(r);

        sol.u = r.u * scale;
        sol.T = r.T * scale;
        sol.Z = r.Z * scale;
        sol.iterations = r.iterations;
        sol.primal_residual = r.primal_residual * scale;
        sol.dual_residual = r.dual_residual * scale;
        sol.converged = r.converged;
        sol.objective = anm_objective(sol.u, sol.T, sol.Z, G, W, tau);
        return sol;
    }

    double atomic_norm(const CMatrix &Z, const SolverOptions &opts)
    {
        opts.validate();
        if (Z.rows() < 1 || Z.cols() < 1)
            throw std::invalid_argument("atomic norm of an empty matrix");
        if (!Z.allFinite())
            throw numeric_failure("atomic norm: non-finite input");
        const double scale = Z.norm();
        if (scale == 0.0)
            return 0.0;

        const CMatrix Zn = Z / scale;
        SplitProblem p;
        p.M = Z.rows();
        p.N = Z.cols();
        p.weight_u = 0.5;
        p.weight_T = 0.5;
        p.z_fixed = &Zn;

        SplitResult r = solve_split(p, opts, 1.0);
        repair_psd(r);
        return scale * (0.5 * r.u(0).real() + 0.5 * r.T.trace().real());
    }

    CVector design_ris_control(const EffectiveChannel &H_eff)
    {
        const CMatrix &H = H_eff.H;
        if (H.cols() < 1 || H.rows() < 1 || H.norm() == 0.0)
            throw std::invalid_argument("RIS control design needs a nonzero effective channel");
        Eigen::JacobiSVD<CMatrix> svd(H, Eigen::ComputeThinV);
        const CVector v = svd.matrixV().col(0);
        const double ref = std::arg(v(0));
        CVector omega(v.size());
        for (Eigen::Index m = 0; m < v.size(); ++m)
            omega(m) = std::polar(1.0, std::arg(v(m)) - ref);
        return omega;
    }
}
