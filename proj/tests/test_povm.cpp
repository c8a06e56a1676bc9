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

#include <memory>
#include <random>
#include <vector>

#include "covneu/error.hpp"
#include "covneu/groups.hpp"
#include "covneu/povm.hpp"
#include "test_util.hpp"

namespace covneu {
namespace {

using testing::omega;

ErrorCode code_of(auto &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

Representation pauli_extension() {
    const auto p = make_projective(testing::klein_group(), testing::pauli_projective().images);
    return central_extension(p).rep;
}

TEST(Validate, TrinePasses) {
    const auto r = validate(testing::p2_povm());
    EXPECT_LE(r.completeness_deviation, 1e-12);
    EXPECT_TRUE(r.duplicates.empty());
    EXPECT_TRUE(r.passed);
}

TEST(Validate, ComputationalBasisPasses) {
    EXPECT_TRUE(validate(povm_from_matrix(identity(2))).passed);
}

TEST(Validate, DoubledVectorFailsWithUnitDeviation) {
    auto p = testing::p2_povm();
    p.vectors[0] *= 2.0;
    const auto r = validate(p);
    EXPECT_FALSE(r.passed);
    // Extra operator 3 |Psi_0><Psi_0| has every entry equal to 1.
    EXPECT_NEAR(r.completeness_deviation, 1.0, 1e-12);
}

TEST(Validate, RepeatedVectorReportsDuplicate) {
    auto p = testing::p2_povm();
    p.vectors.push_back(omega(5, 2) * p.vectors[1]);
    const auto r = validate(p);
    EXPECT_FALSE(r.passed);
    ASSERT_EQ(r.duplicates.size(), 1u);
    EXPECT_EQ(r.duplicates[0], std::make_pair(std::size_t{1}, std::size_t{3}));
    EXPECT_NEAR(r.completeness_deviation, 1.0 / 3.0, 1e-12);
}

TEST(DefiningMatrix, Trine) {
    Matrix expected(2, 3);
    expected << 1, 1, 1, 1, omega(3, 2), omega(3, 1);
    expected /= std::sqrt(3.0);
    EXPECT_LT(max_abs(defining_matrix(testing::p2_povm()) - expected), 1e-15);
}

TEST(DefiningMatrix, OrthonormalBasisIsIdentity) {
    EXPECT_EQ(defining_matrix(povm_from_matrix(identity(3))), identity(3));
}

TEST(DefiningMatrix, WeylHeisenbergColumns) {
    Vector v(4);
    v << 0.3, cplx(0.1, 0.2), cplx(-0.2, 0.1), 0.0;
    v *= 0.5 / v.norm();
    const auto wh = wh_povm(4, v);
    const Matrix m = defining_matrix(wh.povm);
    ASSERT_EQ(m.rows(), 4);
    ASSERT_EQ(m.cols(), 16);
    for (long long j = 0; j < 4; ++j)
        for (long long l = 0; l < 4; ++l) {
            const Vector col = unitary_power(clock_matrix(4), l) * unitary_power(shift_matrix(4), j) * v;
            EXPECT_LT((m.col(j * 4 + l) - col).norm(), 1e-14);
        }
    EXPECT_TRUE(validate(wh.povm).passed);
}

TEST(Probabilities, TrineOnZero) {
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1.0;
    for (double p : probabilities(testing::p2_povm(), rho)) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
}

TEST(Probabilities, MaximallyMixed) {
    const auto p = wh_povm(4, wh_symmetric_vector(4, 0.3)).povm;
    const auto probs = probabilities(p, identity(4) / 4.0);
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(probs[k], p.vectors[k].squaredNorm() / 4.0, 1e-15);
}

TEST(Probabilities, TrineOnPlus) {
    Matrix rho = Matrix::Constant(2, 2, 0.5);
    const auto probs = probabilities(testing::p2_povm(), rho);
    EXPECT_NEAR(probs[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(probs[1], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(probs[2], 1.0 / 6.0, 1e-15);
}

TEST(Probabilities, InvalidStates) {
    const auto p = testing::p2_povm();
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    bad(0, 0) = 1.0;
    EXPECT_EQ(code_of([&] { probabilities(p, bad); }), ErrorCode::InvalidState);
    EXPECT_EQ(code_of([&] { probabilities(p, identity(2)); }), ErrorCode::InvalidState);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_EQ(code_of([&] { probabilities(p, neg); }), ErrorCode::InvalidState);
}

TEST(OrbitPOVM, CyclicReproducesTruncatedFourier) {
    const auto phi = cyclic_diagonal_representation(8, 3);
    const Vector psi0 = Vector::Constant(3, 1.0 / std::sqrt(8.0));
    const auto orbit = orbit_povm(phi, psi0, true);
    EXPECT_TRUE(orbit.report.passed);
    const Matrix m = defining_matrix(orbit.povm);
    Matrix expected(3, 8);
    for (long long j = 0; j < 3; ++j)
        for (long long k = 0; k < 8; ++k) expected(j, k) = omega(8, j * k) / std::sqrt(8.0);
    EXPECT_LT(max_abs(m - expected), 1e-14);
}

TEST(OrbitPOVM, WeylHeisenbergModuloPhaseHasSixteenOperators) {
    Vector v(4);
    v << 0.4, cplx(0.1, 0.3), -0.2, cplx(0.05, -0.1);
    v *= 0.5 / v.norm();
    const auto phi = natural_representation(std::make_shared<const MatrixGroup>(weyl_heisenberg_group(4)));
    const auto orbit = orbit_povm(phi, v, true);
    EXPECT_EQ(orbit.povm.size(), 16u);
    EXPECT_TRUE(orbit.report.passed);
    const auto full = orbit_povm(phi, v, false);
    EXPECT_EQ(full.povm.size(), 64u);
    EXPECT_FALSE(full.report.passed);
}

TEST(OrbitPOVM, TrivialGroupSingleOperator) {
    const std::vector<Matrix> gens{identity(1)};
    const auto g = std::make_shared<const MatrixGroup>(MatrixGroup::generate(gens, 1, false));
    Vector psi(1);
    psi << cplx(0.6, 0.8);
    const auto orbit = orbit_povm(natural_representation(g), psi, true);
    ASSERT_EQ(orbit.povm.size(), 1u);
    EXPECT_NEAR(std::abs(orbit.povm.vectors[0](0)), 1.0, 1e-15);
}

TEST(OrbitPOVM, ReducibleActionNotCompletable) {
    const std::vector<Matrix> gens{pauli_z()};
    const auto g = std::make_shared<const MatrixGroup>(MatrixGroup::generate(gens, 2, false));
    Vector psi(2);
    psi << 1, 0;
    EXPECT_EQ(code_of([&] { orbit_povm(natural_representation(g), psi, true); }), ErrorCode::NotCompletable);
}

TEST(OrbitPOVM, OrbitSumIsIdentity) {
    std::mt19937_64 rng(3);
    const auto phi = natural_representation(std::make_shared<const MatrixGroup>(dihedral_group(6)));
    for (int t = 0; t < 5; ++t) {
        const auto orbit = orbit_povm(phi, testing::random_state(2, rng), true);
        Matrix sum = Matrix::Zero(2, 2);
        for (const auto &v : orbit.povm.vectors) sum += v * v.adjoint();
        EXPECT_LT(max_abs(sum - identity(2)), 1e-12);
    }
}

TEST(DeriveMonomial, PauliGeneratorsMatchDisplay) {
    const auto phi = pauli_extension();
    const auto p = testing::pauli_povm(testing::d8_alpha(), testing::d8_beta());
    const auto mon = derive_monomial(phi, p);
    Matrix z(4, 4), x(4, 4);
    z << 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
    x << 0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0;
    // Extension element (g, 1) sits at index g; (0,1) is 1 and (1,0) is 2.
    EXPECT_LT(max_abs(mon.image(1) - z), 1e-12);
    EXPECT_LT(max_abs(mon.image(2) - x), 1e-12);
}

TEST(DeriveMonomial, CyclicIsRegularCycle) {
    const auto c = cyclic_povm(8, 3);
    const auto mon = derive_monomial(c.phi, c.povm);
    for (const auto &row : mon.phases)
        for (const auto &ph : row) EXPECT_LT(std::abs(ph - 1.0), 1e-12);
    for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(mon.perm[1][k], (k + 1) % 8);
}

TEST(DeriveMonomial, GroupGeneratedIsRegular) {
    const auto group = std::make_shared<const MatrixGroup>(dihedral_group(5));
    const auto phi = natural_representation(group);
    Vector psi(2);
    psi << cplx(0.7, 0.1), cplx(0.2, -0.4);
    const auto orbit = orbit_povm(phi, psi, true);
    ASSERT_EQ(orbit.povm.size(), group->order());
    const auto mon = derive_monomial(phi, orbit.povm).representation();
    const auto reg = regular_representation(group);
    for (std::size_t g = 0; g < group->order(); ++g) EXPECT_LT(max_abs(mon.images[g] - reg.images[g]), 1e-12);
}

TEST(DeriveMonomial, DefiningEquationAndHomomorphism) {
    std::vector<CovariantPOVM> cases{cyclic_povm(8, 3), dihedral_povm(4, 0.3, 0.4),
                                     wh_povm(4, wh_symmetric_vector(4, cplx(0.5, 0.2)))};
    cases.push_back({testing::pauli_povm(testing::d8_alpha(), testing::d8_beta()), pauli_extension()});
    for (const auto &c : cases) {
        const Matrix m = defining_matrix(c.povm);
        const auto mon = derive_monomial(c.phi, c.povm).representation();
        for (std::size_t g = 0; g < c.phi.images.size(); ++g)
            EXPECT_LT(max_abs(c.phi.images[g] * m - m * mon.images[g]), 1e-8);
        EXPECT_LT(homomorphism_defect(mon), 1e-8);
    }
}

TEST(DeriveMonomial, WrongGroupNotCovariant) {
    const auto phi = natural_representation(std::make_shared<const MatrixGroup>(dihedral_group(4)));
    EXPECT_EQ(code_of([&] { derive_monomial(phi, testing::p2_povm()); }), ErrorCode::NotCovariant);
}

TEST(CovarianceCheck, PauliPovmIsCovariant) {
    EXPECT_TRUE(covariance_check(testing::pauli_projective(),
                                 testing::pauli_povm(testing::d8_alpha(), testing::d8_beta())));
}

TEST(CovarianceCheck, TrivialSubgroupAlwaysCovariant) {
    const std::vector<Matrix> gens{identity(2)};
    const auto g = std::make_shared<const MatrixGroup>(MatrixGroup::generate(gens, 1, false));
    EXPECT_TRUE(covariance_check(natural_representation(g), testing::p2_povm()));
}

TEST(CovarianceCheck, RandomReflectionBreaksTrine) {
    std::mt19937_64 rng(17);
    const Vector n = testing::random_state(2, rng);
    const std::vector<Matrix> refl{identity(2) - 2.0 * n * n.adjoint()};
    const auto g = std::make_shared<const MatrixGroup>(MatrixGroup::generate(refl, 2, false));
    EXPECT_FALSE(covariance_check(natural_representation(g), testing::p2_povm()));
}

TEST(Families, DihedralNormalization) {
    EXPECT_EQ(code_of([] { dihedral_povm(4, 0.5, 0.5); }), ErrorCode::NotNormalized);
    const auto c = dihedral_povm(8, 0.6 / std::sqrt(8.0), 0.8 / std::sqrt(8.0));
    EXPECT_EQ(c.povm.size(), 16u);
    EXPECT_TRUE(validate(c.povm).passed);
}

TEST(Families, SymmetricVectorShape) {
    const cplx a(0.7, 0.0);
    const Vector v = wh_symmetric_vector(8, a);
    EXPECT_NEAR(v.squaredNorm(), 1.0 / 8.0, 1e-15);
    double kappa = 0.0;
    for (int i = 0; i < 4; ++i) kappa += std::pow(std::abs(a), 2 * i);
    kappa *= 16.0;
    for (int i = 0; i < 4; ++i) {
        EXPECT_LT(std::abs(v(i) - std::pow(a, i) / std::sqrt(kappa)), 1e-15);
        EXPECT_LT(std::abs(v(7 - i) - v(i)), 1e-15);
    }
}

}  // namespace
}  // namespace covneu
