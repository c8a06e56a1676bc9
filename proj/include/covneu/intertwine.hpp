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

#pragma once

#include <cstddef>
#include <vector>

#include "covneu/groups.hpp"
#include "covneu/repdec.hpp"

namespace covneu {

/// Frobenius-orthonormal basis of Int(phi, psi) = {T : phi(g) T = T psi(g)}.
struct IntertwinerBasis {
    std::vector<Matrix> basis;

    std::size_t dim() const { return basis.size(); }
};

/// Group-averages the matrix units E_ij and orthonormalizes. The expected
/// dimension comes from the character inner product and ends the search early.
IntertwinerBasis intertwiner_basis(const Representation &phi, const Representation &psi);

/// Max over g of |phi(g) T - T psi(g)|.
double intertwining_defect(const Representation &phi, const Representation &psi, const Matrix &t);

struct ClassBlocks {
    std::size_t label = 0;
    std::size_t degree = 0;
    std::size_t left_count = 0;   // m_i
    std::size_t right_count = 0;  // n_i
};

struct StructureReport {
    std::vector<ClassBlocks> classes;
    std::size_t expected_dim = 0;  // sum_i m_i n_i
    double max_defect = 0.0;
};

/// Checks that U_L T U_R^dagger is, for every basis element T, a block matrix
/// whose (a, b) block is lambda I when blocks a and b carry the same
/// irreducible and zero otherwise. decR is first aligned to decL. Throws
/// StructureViolation.
StructureReport structure_check(const IntertwinerBasis &basis, const Representation &left,
                                const Decomposition &dec_left, const Representation &right,
                                const Decomposition &dec_right);

/// Result of matching phi's irreducibles inside phi_mon.
struct Extension {
    Representation phi_prime;      // surplus blocks of W phi_mon W^dagger
    std::vector<std::size_t> tau;  // block i of (U phi U^dagger) + phi' sits at block tau[i] of W phi_mon W^dagger
    Decomposition dec_phi;         // aligned so its blocks equal the matching phi_mon blocks
    Decomposition dec_mon;
    std::vector<Block> left_blocks;  // blocks of (U phi U^dagger) + phi' in the enlarged space
};

/// Throws NotAConstituent if some irreducible of phi is missing from phi_mon
/// or occurs there with lower multiplicity.
Extension build_phi_prime(const Representation &phi, const Decomposition &dec_phi, const Representation &mon,
                          const Decomposition &dec_mon);

/// Per-class coefficient blocks of an intertwiner: coefficients[c](r, s) is
/// the scalar on left block r and right block s of class c.
struct CoefficientBlocks {
    std::vector<std::size_t> labels;
    std::vector<std::vector<std::size_t>> left;   // left block indices per class
    std::vector<std::vector<std::size_t>> right;  // right block indices per class
    std::vector<Matrix> coefficients;
};

/// Extends C = U M W^dagger (d x n) to a unitary tilde-C in
/// Int((U phi U^dagger) + phi', W phi_mon W^dagger) whose top d rows are C.
/// Each class's coefficient rows are completed with complete_to_unitary.
/// Throws NotInIntertwiningSpace or RowsNotOrthonormal.
Matrix complete_intertwiner(const Matrix &c, const Extension &ext, CoefficientBlocks *coefficients = nullptr);

struct ConstituentReport {
    bool holds = false;  // m_i <= n_i for every irreducible of psi1
    std::vector<ClassBlocks> classes;
};

/// Constituent check: with psi1 M = M psi2 and rank M = deg psi1, every
/// irreducible of psi1 occurs in psi2 at least as often. Throws
/// HypothesisViolated when the intertwining relation or the rank fails.
ConstituentReport constituent_check(const Representation &psi1, const Representation &psi2, const Matrix &m);

}  // namespace covneu
