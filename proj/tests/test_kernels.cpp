// Copyright 2026 The covneu Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "covneu/kernels.hpp"
#include "test_util.hpp"

namespace covneu {
namespace {

namespace ks = kernels::serial;
namespace ko = kernels::omp;

constexpr unsigned kQubits = 14;

std::vector<cplx> random_amplitudes(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Vector v = testing::random_state(n, rng);
    return {v.data(), v.data() + v.size()};
}

double max_diff(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

TEST(Kernels, SingleQubitMatchesDenseOnSmallRegister) {
    std::mt19937_64 rng(1);
    const Matrix u = testing::random_unitary(2, rng);
    const cplx m[4] = {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
    auto state = random_amplitudes(8, 2);
    const Vector before = Eigen::Map<const Vector>(state.data(), 8);
    ks::apply_single(state, 1, m, {});
    // Bit 1 of three qubits is the middle factor.
    const Vector expected = kron(kron(identity(2), u), identity(2)) * before;
    for (std::size_t i = 0; i < 8; ++i) EXPECT_LT(std::abs(state[i] - expected(static_cast<Eigen::Index>(i))), 1e-14);
}

TEST(Kernels, ControlMaskRestrictsAction) {
    const cplx x[4] = {0, 1, 1, 0};
    std::vector<cplx> state(4, 0.0);
    state[2] = 1.0;  // |10>
    ks::apply_single(state, 0, x, {0b10, 0b10});
    EXPECT_EQ(state[3], cplx(1.0));
    std::vector<cplx> other(4, 0.0);
    other[0] = 1.0;
    ks::apply_single(other, 0, x, {0b10, 0b10});
    EXPECT_EQ(other[0], cplx(1.0));
}

TEST(Kernels, MatrixBitOrder) {
    const std::vector<std::size_t> cycle{1, 2, 3, 0};
    const Matrix p = permutation_matrix(cycle);
    std::vector<cplx> state(8, 0.0);
    state[0b001] = 1.0;  // bits[0] = 0 is the local MSB, bits[1] = 2 the LSB.
    const std::vector<unsigned> bits{0, 2};
    ks::apply_matrix(state, bits, p, {});
    // Local index of |001> is 0b10 = 2, mapped to 3 = bits 0 and 2 set.
    EXPECT_EQ(state[0b101], cplx(1.0));
}

TEST(Kernels, PhasesAddOverSetBits) {
    std::vector<cplx> state(4, 0.5);
    const std::vector<unsigned> bits{0, 1};
    const std::vector<double> phases{0.3, 0.4};
    ks::apply_phases(state, bits, phases, {});
    EXPECT_LT(std::abs(state[0] - 0.5), 1e-15);
    EXPECT_LT(std::abs(state[1] - 0.5 * std::polar(1.0, 0.3)), 1e-15);
    EXPECT_LT(std::abs(state[2] - 0.5 * std::polar(1.0, 0.4)), 1e-15);
    EXPECT_LT(std::abs(state[3] - 0.5 * std::polar(1.0, 0.7)), 1e-15);
}

TEST(Kernels, SerialAndParallelAgreeOnLargeState) {
    const std::size_t n = std::size_t{1} << kQubits;
    std::mt19937_64 rng(5);
    const Matrix u2 = testing::random_unitary(2, rng);
    const cplx m[4] = {u2(0, 0), u2(0, 1), u2(1, 0), u2(1, 1)};
    const Matrix u8 = testing::random_unitary(8, rng);
    const std::vector<unsigned> bits{11, 3, 7};
    const std::vector<double> phases{0.1, -0.7, 2.3};
    const kernels::ControlMask ctrl{(1u << 5) | (1u << 9), 1u << 5};

    auto a = random_amplitudes(n, 6);
    auto b = a;
    for (unsigned bit : {0u, 6u, 13u}) {
        ks::apply_single(a, bit, m, ctrl);
        ko::apply_single(b, bit, m, ctrl);
    }
    ks::apply_matrix(a, bits, u8, {});
    ko::apply_matrix(b, bits, u8, {});
    ks::apply_matrix(a, bits, u8, ctrl);
    ko::apply_matrix(b, bits, u8, ctrl);
    ks::apply_phases(a, bits, phases, ctrl);
    ko::apply_phases(b, bits, phases, ctrl);
    EXPECT_LT(max_diff(a, b), 1e-13);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<cplx> pa(n), pb(n);
    ks::apply_permutation(a, pa, perm);
    ko::apply_permutation(b, pb, perm);
    EXPECT_EQ(max_diff(pa, pb), 0.0);
    for (std::size_t i = 0; i < n; i += 997) EXPECT_EQ(pa[perm[i]], a[i]);

    std::vector<double> qa(n, 0.0), qb(n, 0.0);
    ks::accumulate_probabilities(pa, 0.25, qa);
    ko::accumulate_probabilities(pb, 0.25, qb);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(qa[i], qb[i], 1e-15);
        total += qa[i];
    }
    EXPECT_NEAR(total, 0.25, 1e-12);
}

TEST(Kernels, UnitaryKernelsPreserveNorm) {
    const std::size_t n = std::size_t{1} << kQubits;
    std::mt19937_64 rng(9);
    const Matrix u4 = testing::random_unitary(4, rng);
    auto a = random_amplitudes(n, 10);
    const std::vector<unsigned> bits{12, 1};
    ko::apply_matrix(a, bits, u4, {});
    double norm = 0.0;
    for (const auto &x : a) norm += std::norm(x);
    EXPECT_NEAR(norm, 1.0, 1e-12);
}

}  // namespace
}  // namespace covneu
