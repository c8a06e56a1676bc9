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
#include <cstdint>
#include <vector>

#include "covneu/groups.hpp"
#include "covneu/linalg.hpp"

namespace covneu {

/// Irreducible block of U rho U^dagger; blocks with equal labels carry
/// entrywise-equal images.
struct Block {
    std::size_t offset = 0;
    std::size_t degree = 0;
    std::size_t label = 0;
};

struct Decomposition {
    Matrix base_change;  // U
    std::vector<Block> blocks;
    bool images_checked = false;

    std::size_t dim() const { return static_cast<std::size_t>(base_change.rows()); }
};

struct DecomposeOptions {
    std::uint64_t seed = 0xC0FFEE;
    int max_retries = 8;
    double cluster_gap = 1e-6;  // relative eigenvalue gap that separates clusters
};

/// Splits rho into irreducibles by diagonalizing group-averaged random
/// Hermitian matrices, then conjugates equivalent blocks onto the first one
/// of their class. Blocks are ordered by degree, then by the phase of the
/// character at each generator, then by first occurrence of the class.
/// Throws DecompositionFailed when eigenvalue clustering stays ambiguous.
Decomposition decompose(const Representation &rho, const DecomposeOptions &options = {});

/// Reads the block structure off U rho U^dagger for a known base change.
/// Equivalent blocks that are not already equal are conjugated onto the
/// first block of their class. Throws DecompositionFailed if a block is
/// reducible or U is not unitary.
Decomposition decomposition_from_base_change(const Representation &rho, const Matrix &u);

/// Largest violation of the decomposition invariants over all group
/// elements: off-block entries and differences between equal-label blocks.
double decomposition_defect(const Representation &rho, const Decomposition &dec);

/// Images of one block, B rho(g) B^dagger for the rows B of that block.
Representation block_representation(const Representation &rho, const Decomposition &dec, std::size_t block);

/// Unitary Q with a(g) Q = Q b(g) for equivalent irreducible a and b.
/// Returns the identity when the images already agree.
Matrix unitary_intertwiner(const Representation &a, const Representation &b);

/// (1/|G|) sum_g chi_a(g) conj(chi_b(g)).
cplx character_inner_product(const Representation &a, const Representation &b);

struct ClassCount {
    std::size_t label = 0;
    std::size_t degree = 0;
    std::size_t count = 0;
};

/// Multiplicity of each irreducible class in `dec`, in order of first
/// occurrence. Each count is cross-checked against the character inner
/// product; throws CharacterMismatch if they disagree.
std::vector<ClassCount> multiplicities(const Representation &rho, const Decomposition &dec);
std::vector<ClassCount> multiplicities(const Representation &rho);

/// Re-expresses `dec` so that every block of rho equals (entrywise) the
/// block of `ref_rep` in `ref_dec` with the same character, and takes the
/// label of that block. Blocks with no counterpart keep a fresh label above
/// all reference labels.
Decomposition align_to(const Representation &rho, const Decomposition &dec, const Representation &ref_rep,
                       const Decomposition &ref_dec);

enum class Family { Cyclic, Dihedral, WeylHeisenberg };

struct FamilySpec {
    Family family = Family::Cyclic;
    std::size_t n = 0;  // cyclic group order
    std::size_t d = 0;  // cyclic POVM dimension
    std::size_t m = 0;  // dihedral rotation order or WH dimension
};

struct FamilyBases {
    Matrix u;
    Matrix w;
    std::vector<Block> blueprint;  // blocks of W phi_mon W^dagger
};

/// Closed-form base changes: cyclic U = I_d, W = F_n; dihedral U = I_2,
/// W = Q (I_2 (x) F_m^dagger); Weyl-Heisenberg U = I_m,
/// W = Z^dagger (F_m^dagger (x) F_m) with Z = I + T^{m-1} + ... + T.
/// Throws UnsupportedParameter for sizes outside the family.
FamilyBases family_bases(const FamilySpec &spec);

/// Complement permutation on k+1 qubits: |x,0> -> |x,0>, |x,1> -> |~x,1>.
Matrix complement_permutation(std::size_t k);
/// Z = I_m + T^{m-1} + T^{m-2} + ... + T (direct sum).
Matrix wh_z_matrix(std::size_t m);

}  // namespace covneu
