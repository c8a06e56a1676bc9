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

#include <random>
#include <vector>

#include "covneu/error.hpp"
#include "covneu/linalg.hpp"
#include "test_util.hpp"

namespace covneu {
namespace {

using testing::omega;

Matrix integer_matrix(std::mt19937_64 &rng, Eigen::Index r, Eigen::Index c) {
    std::uniform_int_distribution<int> dist(-4, 4);
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(dist(rng), dist(rng));
    return m;
}

TEST(Kron, IdentityLeftGivesBlockDiagonal) {
    Matrix expected = Matrix::Zero(4, 4);
    expected.block(0, 0, 2, 2) = pauli_x();
    expected.block(2, 2, 2, 2) = pauli_x();
    EXPECT_EQ(kron(identity(2), pauli_x()), expected);
}

TEST(Kron, TrivialRightFactor) {
    Matrix a(2, 3);
    a << 1, 2, 3, cplx(0, 1), 5, 6;
    EXPECT_EQ(kron(a, identity(1)), a);
}

TEST(Kron, ReproducesCoefficientDisplay) {
    const cplx a(0.3, 0.2), b(0.1, -0.5);
    Matrix base(2, 2);
    base << a, b, std::conj(b), -std::conj(a);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = a;
    expected(0, 2) = b;
    expected(1, 1) = a;
    expected(1, 3) = b;
    expected(2, 0) = std::conj(b);
    expected(2, 2) = -std::conj(a);
    expected(3, 1) = std::conj(b);
    expected(3, 3) = -std::conj(a);
    EXPECT_LT(max_abs(kron(std::sqrt(2.0) * base, identity(2)) - std::sqrt(2.0) * expected), 1e-15);
}

TEST(Kron, AssociativeOnIntegerEntries) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        const Matrix a = integer_matrix(rng, 2, 3), b = integer_matrix(rng, 3, 2), c = integer_matrix(rng, 2, 2);
        EXPECT_EQ(kron(kron(a, b), c), kron(a, kron(b, c)));
        EXPECT_EQ(direct_sum(direct_sum(a, b), c), direct_sum(a, direct_sum(b, c)));
    }
}

TEST(DirectSum, PadsStateWithZeros) {
    Matrix rho(2, 2);
    rho << 0.5, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.5;
    const Matrix padded = direct_sum(rho, Matrix::Zero(2, 2));
    EXPECT_EQ(padded.rows(), 4);
    EXPECT_EQ(padded.topLeftCorner(2, 2), rho);
    EXPECT_EQ(max_abs(padded.bottomRows(2)), 0.0);
    EXPECT_EQ(max_abs(padded.rightCols(2)), 0.0);
}

TEST(DirectSum, Identities) {
    EXPECT_EQ(direct_sum(identity(1), identity(1)), identity(2));
    EXPECT_EQ(direct_sum(identity(2), identity(3)), identity(5));
    const std::vector<Matrix> blocks{identity(1), pauli_x(), identity(2)};
    EXPECT_EQ(direct_sum(blocks), direct_sum(direct_sum(identity(1), pauli_x()), identity(2)));
}

TEST(IsUnitary, FourierIsUnitary) { EXPECT_TRUE(is_unitary(fourier(4), 1e-9)); }

TEST(IsUnitary, ScaledIdentityIsNot) { EXPECT_FALSE(is_unitary(2.0 * identity(2), 1e-9)); }

TEST(IsUnitary, DisplayedDilationWithEqualWeights) {
    const cplx a = 0.5, b = 0.5;
    Matrix tm(4, 4);
    tm << a, a, b, b, b, -b, a, -a, std::conj(b), std::conj(b), -std::conj(a), -std::conj(a), -std::conj(a),
        std::conj(a), std::conj(b), -std::conj(b);
    EXPECT_TRUE(is_unitary(tm, 1e-9));
}

TEST(IsUnitary, NonSquareThrows) {
    EXPECT_THROW(unitary_deviation(Matrix::Zero(2, 3)), Error);
}

TEST(CompleteToUnitary, UnitRowGivesIdentity) {
    Matrix c(1, 2);
    c << 1, 0;
    EXPECT_EQ(complete_to_unitary(c), identity(2));
}

TEST(CompleteToUnitary, TrineThirdRowSpansConjugateFourierRow) {
    const Matrix m = defining_matrix(testing::p2_povm());
    const Matrix u = complete_to_unitary(m);
    EXPECT_TRUE(is_unitary(u, 1e-9));
    EXPECT_EQ(u.topRows(2), m);
    Vector target(3);
    target << 1, omega(3, 1), omega(3, 2);
    target /= std::sqrt(3.0);
    const cplx overlap = (u.row(2).conjugate() * target)(0);
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12);
}

TEST(CompleteToUnitary, UnitaryInputReturnedUnchanged) {
    const Matrix f = fourier(5);
    EXPECT_EQ(complete_to_unitary(f), f);
}

TEST(CompleteToUnitary, RejectsNonOrthonormalRows) {
    Matrix c(2, 3);
    c << 1, 0, 0, 1, 0, 0;
    try {
        complete_to_unitary(c);
        FAIL() << "expected RowsNotOrthonormal";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::RowsNotOrthonormal);
    }
}

TEST(CompleteToUnitary, RandomIsometriesKeepRowsBitExact) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const std::size_t d = 1 + static_cast<std::size_t>(t % n);
        const Matrix rows = testing::random_unitary(n, rng).topRows(static_cast<Eigen::Index>(d));
        const Matrix u = complete_to_unitary(rows);
        EXPECT_TRUE(is_unitary(u, 1e-9));
        EXPECT_EQ(u.topRows(static_cast<Eigen::Index>(d)), rows);
        EXPECT_TRUE(all_finite(u));
    }
}

TEST(Fourier, TwoPointIsHadamard) {
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    EXPECT_LT(max_abs(fourier(2) - h / std::sqrt(2.0)), 1e-15);
}

TEST(Fourier, Unitary) {
    for (std::size_t n : {1, 2, 3, 7, 16}) EXPECT_LT(unitary_deviation(fourier(n)), 1e-12);
}

TEST(Fourier, EntryOneThreeOfFourPoint) {
    EXPECT_LT(std::abs(fourier(4)(1, 3) - cplx(0, -0.5)), 1e-15);
}

TEST(Fourier, DiagonalizesShift) {
    for (std::size_t n : {2, 3, 8, 12}) {
        const Matrix f = fourier(n);
        EXPECT_LT(max_abs(f * shift_matrix(n) * f.adjoint() - clock_matrix(n)), 1e-9);
    }
}

TEST(RootOfUnity, QuarterTurnsExact) {
    EXPECT_EQ(root_of_unity(4, 1), cplx(0, 1));
    EXPECT_EQ(root_of_unity(4, 2), cplx(-1, 0));
    EXPECT_EQ(root_of_unity(4, -1), cplx(0, -1));
    EXPECT_EQ(root_of_unity(8, 8), cplx(1, 0));
}

TEST(PermutationMatrix, IdentityPermutation) {
    const std::vector<std::size_t> p{0, 1, 2, 3};
    EXPECT_EQ(permutation_matrix(p), identity(4));
}

TEST(PermutationMatrix, CycleIsShift) {
    for (std::size_t m : {2, 5, 8}) {
        std::vector<std::size_t> p(m);
        for (std::size_t i = 0; i < m; ++i) p[i] = (i + 1) % m;
        const Matrix s = permutation_matrix(p);
        EXPECT_EQ(s, shift_matrix(m));
        for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(s((i + 1) % m, i), cplx(1.0));
    }
}

TEST(PermutationMatrix, HalvingMapOnFour) {
    // 2i -> i, 2i - 1 -> -i (mod 4).
    std::vector<std::size_t> p(4);
    for (long i = 0; i < 2; ++i) p[static_cast<std::size_t>(2 * i)] = static_cast<std::size_t>(i);
    for (long i = 1; i <= 2; ++i) p[static_cast<std::size_t>(2 * i - 1)] = static_cast<std::size_t>((4 - i) % 4);
    const Matrix j = permutation_matrix(p);
    EXPECT_TRUE(is_unitary(j, 0.0));
    EXPECT_EQ(j(0, 0), cplx(1.0));
    EXPECT_EQ(j(1, 2), cplx(1.0));
    EXPECT_EQ(j(3, 1), cplx(1.0));
    EXPECT_EQ(j(2, 3), cplx(1.0));
}

TEST(PermutationMatrix, RejectsNonBijection) {
    const std::vector<std::size_t> p{0, 0, 1};
    EXPECT_THROW(permutation_matrix(p), Error);
}

TEST(UnitaryPower, NegativeUsesAdjoint) {
    const Matrix t = clock_matrix(5);
    EXPECT_LT(max_abs(unitary_power(t, -2) * unitary_power(t, 2) - identity(5)), 1e-12);
    EXPECT_LT(max_abs(unitary_power(t, 5) - identity(5)), 1e-12);
}

TEST(NumericalRank, CountsSingularValues) {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-3;
    m(2, 2) = 1e-12;
    EXPECT_EQ(numerical_rank(m, 1e-8), 2u);
}

TEST(CanonicalPhase, FirstEntryRealPositive) {
    Matrix m(2, 2);
    m << 0, cplx(0, 2), 1, 0;
    const Matrix c = canonical_phase(m, 1e-12);
    EXPECT_LT(std::abs(c(0, 1) - cplx(2, 0)), 1e-15);
    EXPECT_LT(std::abs(c(1, 0) - cplx(0, -1)), 1e-15);
}

}  // namespace
}  // namespace covneu
