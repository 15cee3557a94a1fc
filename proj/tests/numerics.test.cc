// Copyright 2026 The symseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "symseq/numerics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.h"

using namespace symseq;

TEST(numerics, tau_powers) {
    Complex t = std::exp(Complex(0.0, 2.0 * std::numbers::pi / 3.0));
    for (int k = -7; k <= 7; ++k) {
        EXPECT_LT(std::abs(tau_pow(k) - std::pow(t, k)), 1e-14) << k;
    }
    EXPECT_LT(std::abs(tau_pow(0) + tau_pow(1) + tau_pow(2)), 1e-15);
}

template <std::size_t N>
void check_random_spectrum(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < trials; ++t) {
        auto cols = test::random_unitary_columns<N>(rng);
        std::array<double, N> d;
        for (auto &x : d) x = u(rng);
        if (t % 3 == 0) d[1] = d[0];  // repeated eigenvalue
        Matrix<N> h;
        for (std::size_t k = 0; k < N; ++k) h += d[k] * Matrix<N>::projector(cols[k]);
        h = 0.5 * (h + h.adjoint());

        auto eig = hermitian_eigen(h);
        std::sort(d.begin(), d.end());
        for (std::size_t k = 0; k < N; ++k) {
            EXPECT_NEAR(eig.values[k], d[k], 1e-10);
            Vec<N> hv = h * eig.vectors[k];
            double res = 0.0;
            for (std::size_t i = 0; i < N; ++i) res = std::max(res, std::abs(hv[i] - eig.values[k] * eig.vectors[k][i]));
            EXPECT_LT(res, 1e-10);
            EXPECT_NEAR(norm(eig.vectors[k]), 1.0, 1e-12);
        }
    }
}

TEST(numerics, eigen3_matches_constructed_spectrum) { check_random_spectrum<3>(7, 300); }

TEST(numerics, eigen9_matches_constructed_spectrum) { check_random_spectrum<9>(11, 100); }

TEST(numerics, eigen_examples) {
    auto e = hermitian_eigen(Operator3::diagonal({3.0, -1.0, 2.0}));
    EXPECT_DOUBLE_EQ(e.values[0], -1.0);
    EXPECT_DOUBLE_EQ(e.values[1], 2.0);
    EXPECT_DOUBLE_EQ(e.values[2], 3.0);

    Operator3 pauli_y;
    pauli_y(0, 1) = Complex(0, -1);
    pauli_y(1, 0) = Complex(0, 1);
    e = hermitian_eigen(pauli_y);
    EXPECT_NEAR(e.values[0], -1.0, 1e-14);
    EXPECT_NEAR(e.values[1], 0.0, 1e-14);
    EXPECT_NEAR(e.values[2], 1.0, 1e-14);
}

TEST(numerics, eigen_rejects_non_hermitian) {
    Operator3 m;
    m(0, 1) = 1.0;
    try {
        hermitian_eigen(m);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ContractViolation);
    }
}

TEST(numerics, psd_check) {
    EXPECT_TRUE(psd_check(Operator3::identity()));
    EXPECT_TRUE(psd_check(Operator3::diagonal({1.0, 0.0, -1e-10})));
    EXPECT_FALSE(psd_check(Operator3::diagonal({1.0, 0.0, -1e-6})));
}

TEST(numerics, solve3_forward_multiply) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int t = 0; t < 500; ++t) {
        RealMatrix3 m;
        Real3 b;
        for (auto &row : m)
            for (auto &x : row) x = u(rng);
        for (auto &x : b) x = u(rng);
        Real3 s = solve3(m, b);
        for (std::size_t i = 0; i < 3; ++i) {
            double r = m[i][0] * s[0] + m[i][1] * s[1] + m[i][2] * s[2];
            EXPECT_NEAR(r, b[i], 1e-9 * (1.0 + std::abs(b[i])));
        }
    }
}

TEST(numerics, solve3_singular) {
    RealMatrix3 m = {{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}};
    try {
        solve3(m, {1, 1, 1});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularSystem);
    }
}

TEST(numerics, kron_mixed_product) {
    std::mt19937_64 rng(5);
    auto ua = test::random_unitary_columns<3>(rng);
    auto ub = test::random_unitary_columns<3>(rng);
    Operator3 a = Operator3::outer(ua[0], ua[1]);
    Operator3 b = Operator3::outer(ub[2], ub[0]);
    Vec<9> v = kron(ua[1], ub[0]);
    Vec<9> got = kron(a, b) * v;
    Vec<9> want = kron(ua[0], ub[2]);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_LT(std::abs(got[i] - want[i]), 1e-14);
}
