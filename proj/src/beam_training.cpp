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

#include "risanm/beam_training.hpp"
#include "risanm/array_geometry.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace risanm
{
    PilotMatrix pilot_matrix(int N_B, int D)
    {
        if (N_B < 1)
            throw std::invalid_argument("pilot stream count must be positive");
        if (D < N_B)
            throw std::invalid_argument("orthogonal pilots need D >= N_B");
        return {dft_matrix(D).topRows(N_B)};
    }

    TrainingSetup default_setup(const SystemDims &dims)
    {
        dims.validate();
        TrainingSetup s;
        s.dims = dims;
        s.F = dft_matrix(dims.M_B) / std::sqrt(static_cast<double>(dims.M_B));
        s.C = dft_matrix(dims.M_U) / std::sqrt(static_cast<double>(dims.M_U));
        s.pilots = pilot_matrix(dims.N_B, dims.D);
        return s;
    }

    CMatrix simulate_training(const ChannelPair &channels, const CMatrix &F_i, const CMatrix &C_j, const CVector &omega,
                              const PilotMatrix &S, double sigma, Rng &rng)
    {
        if (sigma < 0.0 || !std::isfinite(sigma))
            throw std::invalid_argument("noise level must be finite and non-negative");
        if (F_i.rows() != channels.H_BR.cols() || C_j.rows() != channels.H_RU.rows() ||
            F_i.cols() != S.S.rows())
            throw std::invalid_argument("training: precoder/combiner/pilot dimensions do not conform");

        const CMatrix H = cascaded_channel(channels.H_RU, omega, channels.H_BR);
        CMatrix X = C_j.adjoint() * H * F_i * S.S;
        if (sigma > 0.0)
        {
            const double var = sigma * sigma;
            for (Eigen::Index c = 0; c < X.cols(); ++c)
                for (Eigen::Index r = 0; r < X.rows(); ++r)
                    X(r, c) += complex_normal(rng, var);
        }
        return X;
    }

    CMatrix matched_filter(const CMatrix &X, const PilotMatrix &S)
    {
        if (X.cols() != S.S.cols())
            throw std::invalid_argument("matched filter: sample count mismatch");
        return X * S.S.adjoint() / static_cast<double>(S.samples());
    }

    CMatrix run_frame(const ChannelPair &channels, const TrainingSetup &setup, const CVector &omega, double sigma,
                      Rng &rng)
    {
        const auto &d = setup.dims;
        if (setup.F.rows() != d.M_B || setup.F.cols() != d.M_B || setup.C.rows() != d.M_U ||
            setup.C.cols() != d.M_U || d.M_B % d.N_B != 0 || d.M_U % d.N_U != 0 || setup.pilots.streams() != d.N_B)
            throw std::invalid_argument("frame: precoder/combiner partition does not match the dimensions");

        CMatrix Y(d.M_U, d.M_B);
        for (int j = 0; j < d.P_U(); ++j)
        {
            const CMatrix C_j = setup.C.middleCols(j * d.N_U, d.N_U);
            for (int i = 0; i < d.P_B(); ++i)
            {
                const CMatrix F_i = setup.F.middleCols(i * d.N_B, d.N_B);
                const CMatrix X = simulate_training(channels, F_i, C_j, omega, setup.pilots, sigma, rng);
                Y.block(j * d.N_U, i * d.N_B, d.N_U, d.N_B) = matched_filter(X, setup.pilots);
            }
        }
        return Y;
    }

    CompiledMeasurement run_protocol(const ChannelPair &channels, const TrainingSetup &setup,
                                     const RisCodebook &codebook, double sigma, std::uint64_t seed)
    {
        const auto &d = setup.dims;
        if (codebook.frames() < 1)
            throw std::invalid_argument("protocol needs at least one frame");
        if (codebook.elements() != channels.H_BR.rows())
            throw std::invalid_argument("codebook height differs from the RIS element count");

        CompiledMeasurement m;
        m.Y_stack.resize(d.link_dim(), codebook.frames());
        for (int b = 0; b < codebook.frames(); ++b)
        {
            Rng rng = substream(seed, static_cast<std::uint64_t>(b));
            const CMatrix Yb = run_frame(channels, setup, codebook.W.col(b), sigma, rng);
            m.Y_stack.col(b) = Eigen::Map<const CVector>(Yb.data(), Yb.size());
        }
        m.G = decouple(m.Y_stack, setup.F, setup.C);
        m.F = setup.F;
        m.C = setup.C;
        m.W = codebook.W;
        m.sigma = sigma;
        m.dims = d;
        m.dims.B = codebook.frames();
        return m;
    }

    double condition_number(const CMatrix &A)
    {
        Eigen::JacobiSVD<CMatrix> svd(A);
        const RVector &s = svd.singularValues();
        if (s.size() == 0)
            return std::numeric_limits<double>::infinity();
        const double lo = s(s.size() - 1);
        return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
    }

    CMatrix decouple(const CMatrix &Y_stack, const CMatrix &F, const CMatrix &C)
    {
        const Eigen::Index M_B = F.rows(), M_U = C.rows();
        if (F.cols() != M_B || C.cols() != M_U || Y_stack.rows() != M_B * M_U)
            throw std::invalid_argument("decouple: F, C and the stacked measurement do not conform");
        for (const CMatrix *A : {&F, &C})
        {
            const double k = condition_number(*A);
            if (!(k < 1e12))
                throw numeric_failure("decouple: " + std::string(A == &F ? "precoder" : "combiner") +
                                      " is singular (condition number " + std::to_string(k) + ")");
        }

        Eigen::PartialPivLU<CMatrix> lu_CH(C.adjoint());
        Eigen::PartialPivLU<CMatrix> lu_FT(F.transpose());
        CMatrix G(Y_stack.cols(), Y_stack.rows());
        for (Eigen::Index b = 0; b < Y_stack.cols(); ++b)
        {
            const Eigen::Map<const CMatrix> Yb(Y_stack.col(b).data(), M_U, M_B);
            const CMatrix left = lu_CH.solve(Yb);                       // C^-H Y_b
            const CMatrix Xb = lu_FT.solve(left.transpose()).transpose(); // (C^-H Y_b) F^-1
            G.row(b) = Eigen::Map<const CVector>(Xb.data(), Xb.size()).adjoint();
        }
        return G;
    }

    std::string format_complex(cplx z)
    {
        std::ostringstream os;
        os.precision(std::numeric_limits<double>::max_digits10);
        os << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << 'j';
        return os.str();
    }

    cplx parse_complex(const std::string &s)
    {
        auto fail = [&]() -> cplx { throw std::invalid_argument("malformed complex entry '" + s + "'"); };
        if (s.size() < 2 || s.back() != 'j')
            return fail();
        // split at the last sign that is not a leading sign or an exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t i = s.size() - 1; i > 0; --i)
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            {
                split = i;
                break;
            }
        if (split == std::string::npos)
            return fail();
        std::size_t used_re = 0, used_im = 0;
        const std::string re_s = s.substr(0, split), im_s = s.substr(split, s.size() - split - 1);
        double re = 0.0, im = 0.0;
        try
        {
            re = std::stod(re_s, &used_re);
            im = std::stod(im_s, &used_im);
        }
        catch (const std::exception &)
        {
            return fail();
        }
        if (used_re != re_s.size() || used_im != im_s.size())
            return fail();
        return {re, im};
    }

    namespace
    {
        void write_block(std::ostream &os, const char *name, const CMatrix &A)
        {
            os << name << ',' << A.rows() << ',' << A.cols() << '\n';
            for (Eigen::Index r = 0; r < A.rows(); ++r)
            {
                for (Eigen::Index c = 0; c < A.cols(); ++c)
                    os << (c ? "," : "") << format_complex(A(r, c));
                os << '\n';
            }
        }

        std::vector<std::string> split_csv(const std::string &line)
        {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                out.push_back(cell);
            return out;
        }

        bool next_line(std::istream &is, std::string &line)
        {
            if (!std::getline(is, line))
                return false;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            return true;
        }

        CMatrix read_block(std::istream &is, const char *name)
        {
            std::string line;
            if (!next_line(is, line))
                throw std::invalid_argument(std::string("measurement CSV: missing block ") + name);
            auto head = split_csv(line);
            if (head.size() != 3 || head[0] != name)
                throw std::invalid_argument(std::string("measurement CSV: expected header for ") + name);
            const int rows = std::stoi(head[1]), cols = std::stoi(head[2]);
            if (rows < 0 || cols < 0)
                throw std::invalid_argument("measurement CSV: negative block size");
            CMatrix A(rows, cols);
            for (int r = 0; r < rows; ++r)
            {
                if (!next_line(is, line))
                    throw std::invalid_argument(std::string("measurement CSV: truncated block ") + name);
                auto cells = split_csv(line);
                if (static_cast<int>(cells.size()) != cols)
                    throw std::invalid_argument(std::string("measurement CSV: wrong column count in ") + name);
                for (int c = 0; c < cols; ++c)
                    A(r, c) = parse_complex(cells[static_cast<std::size_t>(c)]);
            }
            return A;
        }
    }

    void write_measurement_csv(std::ostream &os, const CompiledMeasurement &m)
    {
        const auto &d = m.dims;
        os.precision(std::numeric_limits<double>::max_digits10);
        os << "M_B,M_R,M_U,N_B,N_U,D,B,sigma\n";
        os << d.M_B << ',' << d.M_R << ',' << d.M_U << ',' << d.N_B << ',' << d.N_U << ',' << d.D << ',' << d.B << ','
           << m.sigma << '\n';
        write_block(os, "G", m.G);
        write_block(os, "W", m.W);
    }

    CompiledMeasurement read_measurement_csv(std::istream &is)
    {
        std::string line;
        if (!next_line(is, line) || line != "M_B,M_R,M_U,N_B,N_U,D,B,sigma")
            throw std::invalid_argument("measurement CSV: bad header");
        if (!next_line(is, line))
            throw std::invalid_argument("measurement CSV: missing dimension row");
        auto v = split_csv(line);
        if (v.size() != 8)
            throw std::invalid_argument("measurement CSV: dimension row needs 8 fields");
        CompiledMeasurement m;
        auto &d = m.dims;
        d.M_B = std::stoi(v[0]);
        d.M_R = std::stoi(v[1]);
        d.M_U = std::stoi(v[2]);
        d.N_B = std::stoi(v[3]);
        d.N_U = std::stoi(v[4]);
        d.D = std::stoi(v[5]);
        d.B = std::stoi(v[6]);
        m.sigma = std::stod(v[7]);
        d.validate();
        m.G = read_block(is, "G");
        m.W = read_block(is, "W");
        if (m.G.rows() != d.B || m.G.cols() != d.link_dim() || m.W.rows() != d.M_R || m.W.cols() != d.B)
            throw std::invalid_argument("measurement CSV: block sizes disagree with the dimension row");
        return m;
    }
}
