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
#include "covneu/intertwine.hpp"
#include "covneu/povm.hpp"
#include "test_util.hpp"

namespace covneu {
namespace {

GroupPtr share(MatrixGroup g) { return std::make_shared<const MatrixGroup>(std::move(g)); }

ErrorCode code_of(auto &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

TEST(IntertwinerBasis, SchurForInequivalentIrreps) {
    const auto g = share(abelian_group(std::vector<std::size_t>{4}));
    const auto reg = regular_representation(g);
    const auto dec = decompose(reg);
    const auto a = block_representation(reg, dec, 0);
    const auto b = block_representation(reg, dec, 1);
    EXPECT_EQ(intertwiner_basis(a, b).dim(), 0u);
    const auto self = intertwiner_basis(a, a);
    ASSERT_EQ(self.dim(), 1u);
    EXPECT_NEAR(std::abs(self.basis[0](0, 0)), 1.0, 1e-12);
}

TEST(IntertwinerBasis, IrrepCommutantIsScalars) {
    const auto nat = natural_representation(share(weyl_heisenberg_group(4)));
    const auto basis = intertwiner_basis(nat, nat);
    ASSERT_EQ(basis.dim(), 1u);
    EXPECT_LT(max_abs(basis.basis[0] - basis.basis[0](0, 0) * identity(4)), 1e-12);
}

TEST(IntertwinerBasis, RegularCommutantHasDimensionGroupOrder) {
    const auto reg = regular_representation(share(dihedral_group(4)));
    const auto basis = intertwiner_basis(reg, reg);
    EXPECT_EQ(basis.dim(), 8u);
    for (const auto &t : basis.basis) {
        EXPECT_LT(intertwining_defect(reg, reg, t), 1e-12);
        EXPECT_NEAR(t.norm(), 1.0, 1e-12);
    }
    for (std::size_t i = 0; i < basis.dim(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            EXPECT_LT(std::abs((basis.basis[i].adjoint() * basis.basis[j]).trace()), 1e-10);
}

TEST(StructureCheck, BlockScalarAndDimension) {
    std::mt19937_64 rng(4);
    const auto g = share(dihedral_group(8));
    const auto nat = natural_representation(g);
    const auto reg = regular_representation(g);
    const auto left = conjugate(direct_sum(nat, nat), testing::random_unitary(4, rng));
    const auto right = reg;
    const auto dl = decompose(left);
    const auto dr = decompose(right);
    const auto basis = intertwiner_basis(left, right);
    const auto report = structure_check(basis, left, dl, right, dr);
    EXPECT_EQ(report.expected_dim, 4u);
    EXPECT_EQ(basis.dim(), 4u);
    EXPECT_LT(report.max_defect, 1e-7);
}

TEST(StructureCheck, RejectsNonIntertwiner) {
    const auto g = share(abelian_group(std::vector<std::size_t>{3}));
    const auto reg = regular_representation(g);
    const auto dec = decompose(reg);
    IntertwinerBasis bogus;
    bogus.basis.push_back(permutation_matrix(std::vector<std::size_t>{1, 0, 2}));
    bogus.basis.push_back(identity(3));
    bogus.basis.push_back(identity(3));
    EXPECT_EQ(code_of([&] { structure_check(bogus, reg, dec, reg, dec); }), ErrorCode::StructureViolation);
}

TEST(BuildPhiPrime, CyclicSurplusIsRemainingCharacters) {
    const auto c = cyclic_povm(8, 3);
    const auto mon = derive_monomial(c.phi, c.povm).representation();
    const auto bases = family_bases({Family::Cyclic, 8, 3, 0});
    const auto ext = build_phi_prime(c.phi, decomposition_from_base_change(c.phi, bases.u), mon,
                                     decomposition_from_base_change(mon, bases.w));
    EXPECT_EQ(ext.phi_prime.degree(), 5u);
    ASSERT_EQ(ext.tau.size(), 8u);
    // phi(1) = diag(1, w, w^2); phi'(1) carries the other powers.
    const Matrix &img = ext.phi_prime.images[1];
    for (long long j = 0; j < 5; ++j) EXPECT_LT(std::abs(img(j, j) - root_of_unity(8, j + 3)), 1e-12);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(ext.tau[i], i);
}

TEST(BuildPhiPrime, WeylHeisenbergNeedsThreeCopies) {
    const auto c = wh_povm(4, wh_symmetric_vector(4, cplx(0.4, 0.0)));
    const auto mon = derive_monomial(c.phi, c.povm).representation();
    const auto bases = family_bases({Family::WeylHeisenberg, 0, 0, 4});
    const auto dm = decomposition_from_base_change(mon, bases.w);
    const auto ext = build_phi_prime(c.phi, decomposition_from_base_change(c.phi, bases.u), mon, dm);
    EXPECT_EQ(ext.phi_prime.degree(), 12u);
    ASSERT_EQ(ext.left_blocks.size(), 4u);
    for (std::size_t g = 0; g < mon.images.size(); g += 7) {
        const Matrix left = direct_sum(c.phi.images[g], ext.phi_prime.images[g]);
        const Matrix right = dm.base_change * mon.images[g] * dm.base_change.adjoint();
        EXPECT_LT(max_abs(left - right), 1e-9);
    }
}

TEST(BuildPhiPrime, MissingIrrepIsNotAConstituent) {
    const auto g = share(dihedral_group(4));
    const auto nat = natural_representation(g);
    const auto reg = regular_representation(g);
    const auto dec_reg = decompose(reg);
    // Sum of three copies of the plane cannot sit inside the regular rep, which has two.
    const auto triple = direct_sum(direct_sum(nat, nat), nat);
    EXPECT_EQ(code_of([&] { build_phi_prime(triple, decompose(triple), reg, dec_reg); }),
              ErrorCode::NotAConstituent);
}

TEST(CompleteIntertwiner, PauliMatchesDisplayedRowSpan) {
    const auto proj = make_projective(testing::klein_group(), testing::pauli_projective().images);
    const auto ext_group = central_extension(proj);
    const cplx a = testing::d8_alpha(), b = testing::d8_beta();
    const auto p = testing::pauli_povm(a, b);
    const auto mon = derive_monomial(ext_group.rep, p).representation();
    const auto dphi = decompose(ext_group.rep);
    const auto dmon = decompose(mon);
    const auto ext = build_phi_prime(ext_group.rep, dphi, mon, dmon);
    const Matrix m = defining_matrix(p);
    const Matrix c = ext.dec_phi.base_change * m * ext.dec_mon.base_change.adjoint();
    const Matrix tc = complete_intertwiner(c, ext);
    EXPECT_LT(unitary_deviation(tc), 1e-9);
    EXPECT_LT(max_abs(tc.topRows(2) - c), 1e-12);
    const Matrix tm = direct_sum(ext.dec_phi.base_change.adjoint(), identity(2)) * tc * ext.dec_mon.base_change;
    Matrix displayed(4, 4);
    displayed << a, a, b, b, b, -b, a, -a, std::conj(b), std::conj(b), -std::conj(a), -std::conj(a), -std::conj(a),
        std::conj(a), std::conj(b), -std::conj(b);
    EXPECT_LT(testing::row_span_gap(tm.bottomRows(2), displayed.bottomRows(2)), 1e-9);
    EXPECT_LT(testing::row_span_gap(displayed.bottomRows(2), tm.bottomRows(2)), 1e-9);
}

TEST(CompleteIntertwiner, CyclicCoefficientsAreIdentity) {
    const auto c = cyclic_povm(8, 3);
    const auto mon = derive_monomial(c.phi, c.povm).representation();
    const auto bases = family_bases({Family::Cyclic, 8, 3, 0});
    const auto ext = build_phi_prime(c.phi, decomposition_from_base_change(c.phi, bases.u), mon,
                                     decomposition_from_base_change(mon, bases.w));
    const Matrix cm = defining_matrix(c.povm) * bases.w.adjoint();
    CoefficientBlocks coeffs;
    const Matrix tc = complete_intertwiner(cm, ext, &coeffs);
    EXPECT_LT(max_abs(tc - identity(8)), 1e-12);
    EXPECT_EQ(coeffs.coefficients.size(), 8u);
}

TEST(CompleteIntertwiner, RejectsNonIntertwiner) {
    const auto c = cyclic_povm(4, 2);
    const auto mon = derive_monomial(c.phi, c.povm).representation();
    const auto bases = family_bases({Family::Cyclic, 4, 2, 0});
    const auto ext = build_phi_prime(c.phi, decomposition_from_base_change(c.phi, bases.u), mon,
                                     decomposition_from_base_change(mon, bases.w));
    Matrix bad = Matrix::Zero(2, 4);
    bad(0, 1) = 1.0;
    bad(1, 0) = 1.0;
    EXPECT_EQ(code_of([&] { complete_intertwiner(bad, ext); }), ErrorCode::NotInIntertwiningSpace);
}

TEST(ConstituentCheck, CovariantFamiliesHold) {
    std::vector<CovariantPOVM> cases{cyclic_povm(8, 3), dihedral_povm(4, 0.3, 0.4),
                                     wh_povm(4, wh_symmetric_vector(4, 0.6))};
    for (const auto &c : cases) {
        const auto mon = derive_monomial(c.phi, c.povm).representation();
        const auto report = constituent_check(c.phi, mon, defining_matrix(c.povm));
        EXPECT_TRUE(report.holds);
        for (const auto &cls : report.classes) EXPECT_LE(cls.left_count, cls.right_count);
    }
}

TEST(ConstituentCheck, RankDeficientIsHypothesisViolation) {
    const auto c = cyclic_povm(8, 3);
    const auto mon = derive_monomial(c.phi, c.povm).representation();
    Matrix m = defining_matrix(c.povm);
    m.row(2).setZero();
    EXPECT_EQ(code_of([&] { constituent_check(c.phi, mon, m); }), ErrorCode::HypothesisViolated);
}

TEST(ConstituentCheck, BrokenRelationIsHypothesisViolation) {
    const auto c = cyclic_povm(8, 3);
    const auto mon = derive_monomial(c.phi, c.povm).representation();
    Matrix m = defining_matrix(c.povm);
    m(0, 0) *= -1.0;
    EXPECT_EQ(code_of([&] { constituent_check(c.phi, mon, m); }), ErrorCode::HypothesisViolated);
}

}  // namespace
}  // namespace covneu
