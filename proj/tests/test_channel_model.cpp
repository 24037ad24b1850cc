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
#include "oracles.hpp"
#include "risanm/array_geometry.hpp"
#include "risanm/channel_model.hpp"

#include <doctest.h>

using namespace risanm;

namespace
{
    PathSet one_path(double aoa, double aod, cplx g, Hop hop = Hop::BsToRis)
    {
        PathSet ps;
        ps.hop = hop;
        ps.paths.push_back({aoa, aod, g});
        return ps;
    }
}

TEST_CASE("system dims")
{
    SystemDims d;
    CHECK(d.P_B() == 2);
    CHECK(d.P_U() == 2);
    CHECK(d.trainings_per_frame() == 4);
    CHECK(d.total_trainings() == 64);
    CHECK(d.link_dim() == 32);
    CHECK_NOTHROW(d.validate());
    SystemDims bad = d;
    bad.N_B = 3;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = d;
    bad.D = 2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = d;
    bad.B = 33;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.B = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sample paths")
{
    Rng rng = substream(5, 0);
    const PathSet ps = sample_paths(1, Hop::BsToRis, 30, 150, rng);
    REQUIRE(ps.size() == 1);
    CHECK(ps.paths[0].aoa_deg >= 30);
    CHECK(ps.paths[0].aoa_deg <= 150);
    CHECK(ps.paths[0].aod_deg >= 30);
    CHECK(ps.paths[0].aod_deg <= 150);

    Rng r1 = substream(9, 1), r2 = substream(9, 1);
    const PathSet a = sample_paths(3, Hop::RisToUe, 30, 150, r1), b = sample_paths(3, Hop::RisToUe, 30, 150, r2);
    REQUIRE(a.size() == 3);
    CHECK(a.hop == Hop::RisToUe);
    for (int l = 0; l < 3; ++l)
    {
        CHECK(a.paths[l].aoa_deg == b.paths[l].aoa_deg);
        CHECK(a.paths[l].aod_deg == b.paths[l].aod_deg);
        CHECK(a.paths[l].gain == b.paths[l].gain);
    }

    CHECK_THROWS_AS(sample_paths(0, Hop::BsToRis, 30, 150, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_paths(1, Hop::BsToRis, 150, 30, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_paths(1, Hop::BsToRis, 0, 30, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_paths(1, Hop::BsToRis, 30, 180, rng), std::invalid_argument);
}

TEST_CASE("path gains have unit variance and uniform angles")
{
    Rng rng = substream(5, 2);
    const PathSet ps = sample_paths(10000, Hop::BsToRis, 30, 150, rng);
    double p = 0, re = 0, im = 0, ang = 0;
    for (const auto &x : ps.paths)
    {
        p += std::norm(x.gain);
        re += x.gain.real() * x.gain.real();
        im += x.gain.imag() * x.gain.imag();
        ang += x.aoa_deg;
    }
    p /= 10000;
    CHECK(std::abs(p - 1.0) < 0.05);
    CHECK(std::abs(re / 10000 - 0.5) < 0.05);
    CHECK(std::abs(im / 10000 - 0.5) < 0.05);
    CHECK(std::abs(ang / 10000 - 90.0) < 1.5);
}

TEST_CASE("build channel")
{
    CHECK((build_channel(one_path(90, 90, 1.0), 2, 2) - CMatrix::Ones(2, 2)).norm() < 1e-14);
    const cplx c(0.3, -1.2);
    CHECK(build_channel(one_path(47, 101, c), 5, 7).norm() == doctest::Approx(std::abs(c) * std::sqrt(35.0)));
    CHECK_THROWS_AS(build_channel(PathSet{}, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_channel(one_path(90, 90, 1.0), 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_channel(one_path(0, 90, 1.0), 2, 2), std::invalid_argument);

    Rng rng = substream(5, 3);
    for (int t = 0; t < 10; ++t)
    {
        const PathSet ps = sample_paths(3, Hop::BsToRis, 30, 150, rng);
        CMatrix H = CMatrix::Zero(16, 8);
        for (const auto &p : ps.paths)
            for (int r = 0; r < 16; ++r)
                for (int s = 0; s < 8; ++s)
                    H(r, s) += p.gain * std::polar(1.0, oracle::PI * r * std::cos(p.aoa_deg * oracle::PI / 180)) *
                               std::polar(1.0, -oracle::PI * s * std::cos(p.aod_deg * oracle::PI / 180));
        CHECK((build_channel(ps, 16, 8) - H).norm() < 1e-12);
    }
}

TEST_CASE("cascaded channel")
{
    CMatrix a(1, 1), b(1, 1);
    a << cplx(2, 1);
    b << cplx(0, 3);
    CVector one = CVector::Ones(1);
    CHECK(std::abs(cascaded_channel(a, one, b)(0, 0) - a(0, 0) * b(0, 0)) < 1e-15);

    Rng rng = substream(5, 4);
    const CMatrix HRU = oracle::random_matrix(rng, 4, 6), HBR = oracle::random_matrix(rng, 6, 3);
    CHECK(cascaded_channel(HRU, CVector::Zero(6), HBR).norm() == 0.0);
    const CVector w = oracle::random_vector(rng, 6);
    CMatrix ref = CMatrix::Zero(4, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            for (int m = 0; m < 6; ++m)
                ref(i, j) += HRU(i, m) * w(m) * HBR(m, j);
    CHECK((cascaded_channel(HRU, w, HBR) - ref).norm() < 1e-12);
    CHECK_THROWS_AS(cascaded_channel(HRU, CVector::Ones(5), HBR), std::invalid_argument);
}

TEST_CASE("effective channel")
{
    CMatrix a(1, 1), b(1, 1);
    a << cplx(2, 1);
    b << cplx(0, 3);
    CHECK(std::abs(effective_channel(a, b).H(0, 0) - a(0, 0) * b(0, 0)) < 1e-15);
    CHECK_THROWS_AS(effective_channel(CMatrix::Ones(3, 2), CMatrix::Ones(2, 4)), std::invalid_argument);

    Rng rng = substream(5, 5);
    SystemDims d;
    const ChannelPair ch = make_channels(sample_paths(2, Hop::BsToRis, 30, 150, rng),
                                         sample_paths(2, Hop::RisToUe, 30, 150, rng), d);
    CHECK(ch.H_BR.rows() == 32);
    CHECK(ch.H_BR.cols() == 8);
    CHECK(ch.H_RU.rows() == 4);
    CHECK(ch.H_RU.cols() == 32);
    const EffectiveChannel E = effective_channel(ch.H_BR, ch.H_RU);
    CHECK(E.H.rows() == 32);
    CHECK(E.H.cols() == 32);
    for (int t = 0; t < 100; ++t)
    {
        const CVector w = oracle::random_vector(rng, 32);
        CHECK(relative_error(E.H * w, oracle::vec(cascaded_channel(ch.H_RU, w, ch.H_BR))) < 1e-10);
    }
}

TEST_CASE("vec of a diag-weighted product")
{
    Rng rng = substream(5, 6);
    for (int t = 0; t < 50; ++t)
    {
        const CMatrix A = oracle::random_matrix(rng, 3, 5), C = oracle::random_matrix(rng, 5, 4);
        const CVector b = oracle::random_vector(rng, 5);
        const CMatrix lhs = oracle::vec(A * b.asDiagonal() * C);
        CHECK(relative_error(khatri_rao_cols(C.transpose(), A) * b, lhs) < 1e-10);
    }
}

TEST_CASE("effective channel factored form")
{
    Rng rng = substream(5, 7);
    SystemDims d;
    d.M_B = 4;
    d.M_R = 12;
    d.M_U = 2;
    d.N_B = 2;
    d.N_U = 1;
    d.B = 12;
    for (int t = 0; t < 20; ++t)
    {
        const int Lb = 1 + t % 2, Lr = 1 + (t / 2) % 2;
        const PathSet br = sample_paths(Lb, Hop::BsToRis, 30, 150, rng);
        const PathSet ru = sample_paths(Lr, Hop::RisToUe, 30, 150, rng);
        const ChannelPair ch = make_channels(br, ru, d);
        const int K = Lb * Lr;
        CMatrix Aphi(d.M_R, K), Alink(d.M_B * d.M_U, K);
        CVector rho(K);
        for (int l = 0; l < Lb; ++l)
            for (int k = 0; k < Lr; ++k)
            {
                const int c = l * Lr + k;
                const double f = compose_frequency(ru.paths[k].aod_deg, br.paths[l].aoa_deg).f;
                Aphi.col(c) = oracle::steer(f, d.M_R);
                Alink.col(c) = oracle::kron(steering_vector(br.paths[l].aod_deg, d.M_B).conjugate(),
                                            steering_vector(ru.paths[k].aoa_deg, d.M_U));
                rho(c) = br.paths[l].gain * ru.paths[k].gain;
            }
        const CMatrix rhs = Aphi * rho.conjugate().asDiagonal() * Alink.adjoint();
        const CMatrix lhs = effective_channel(ch.H_BR, ch.H_RU).H.adjoint();
        CHECK(relative_error(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("ranks")
{
    Rng rng = substream(5, 8);
    SystemDims d;
    for (int Lb = 1; Lb <= 2; ++Lb)
        for (int Lr = 1; Lr <= 2; ++Lr)
        {
            const ChannelPair ch = make_channels(sample_paths(Lb, Hop::BsToRis, 30, 150, rng),
                                                 sample_paths(Lr, Hop::RisToUe, 30, 150, rng), d);
            CHECK(numerical_rank(ch.H_BR) <= Lb);
            CHECK(numerical_rank(ch.H_RU) <= Lr);
            const int r = numerical_rank(effective_channel(ch.H_BR, ch.H_RU).H);
            CHECK(r <= Lb * Lr);
            if (Lb == 1 && Lr == 1)
                CHECK(r == 1);
        }
    CHECK(numerical_rank(CMatrix::Zero(3, 3)) == 0);
    CHECK(numerical_rank(CMatrix::Identity(3, 3)) == 3);
}
