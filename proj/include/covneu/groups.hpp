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
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "covneu/linalg.hpp"

namespace covneu {

/// Sequence of generator indices; the element is g[w0] * g[w1] * ... .
using Word = std::vector<std::size_t>;

/// A finite group stored as a closed set of unitary matrices together with
/// its Cayley table. Element 0 is always the identity.
///
/// With `phase_quotient` set, matrices that differ by a global phase are the
/// same element and every stored matrix is the phase-canonical representative
/// (first non-negligible entry real positive).
class MatrixGroup {
   public:
    /// Breadth-first closure of `generators`: identity first, then products
    /// element * generator in generator-index order. Throws
    /// NonUnitaryGenerator or OrderExceeded.
    static MatrixGroup generate(std::span<const Matrix> generators, std::size_t max_order,
                                bool phase_quotient);

    /// Builds a group from an explicit multiplication table. `elements` must be
    /// a faithful matrix realization matching the table; `generators` lists
    /// the element indices used for the word of each element.
    static MatrixGroup from_table(std::vector<Matrix> elements, std::vector<std::size_t> table,
                                  std::vector<std::size_t> generators);

    std::size_t order() const { return elements_.size(); }
    std::size_t dim() const { return dim_; }
    bool phase_quotient() const { return phase_quotient_; }

    const Matrix &element(std::size_t i) const { return elements_[i]; }
    std::span<const Matrix> elements() const { return elements_; }
    const Word &word(std::size_t i) const { return words_[i]; }
    std::span<const std::size_t> generators() const { return generators_; }

    std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
    std::size_t inverse(std::size_t a) const { return inverses_[a]; }
    /// Smallest k >= 1 with a^k = e.
    std::size_t element_order(std::size_t a) const;

    /// Index of `m` (modulo phase for quotient groups), if present.
    std::optional<std::size_t> find(const Matrix &m) const;

   private:
    MatrixGroup() = default;
    void index_element(std::size_t i);
    void build_inverses();
    std::vector<std::int64_t> bucket_key(const Matrix &m) const;

    std::size_t dim_ = 0;
    bool phase_quotient_ = false;
    std::vector<Matrix> elements_;
    std::vector<Word> words_;
    std::vector<std::size_t> generators_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverses_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

using GroupPtr = std::shared_ptr<const MatrixGroup>;

/// One image per group element, in the group's element order.
struct Representation {
    GroupPtr group;
    std::vector<Matrix> images;

    std::size_t degree() const { return images.empty() ? 0 : static_cast<std::size_t>(images[0].rows()); }
    const Matrix &operator()(std::size_t g) const { return images[g]; }
};

/// Max entrywise |rho(g) rho(h) - rho(gh)| over all pairs.
double homomorphism_defect(const Representation &rep);
/// Max unitarity deviation over all images.
double unitarity_defect(const Representation &rep);

/// Character values trace(rho(g)) in element order.
std::vector<cplx> character(const Representation &rep);

/// Images phi(g) of a projective representation together with the factor
/// system gamma(g, h) defined by phi(g) phi(h) = gamma(g, h) phi(gh).
struct ProjectiveRep {
    GroupPtr group;
    std::vector<Matrix> images;
    std::vector<cplx> factor_system;  // row-major |G| x |G|

    cplx gamma(std::size_t g, std::size_t h) const { return factor_system[g * group->order() + h]; }
};

/// Recovers gamma from the images (ratio of phi(g)phi(h) to phi(gh) at the
/// first non-negligible entry of phi(gh)). Throws InvalidArgument when the
/// images are not projectively multiplicative.
ProjectiveRep make_projective(GroupPtr group, std::vector<Matrix> images);

struct CentralExtension {
    GroupPtr group;                 // the extension, elements (g, h)
    Representation rep;             // h * phi(g), an ordinary representation
    std::vector<cplx> phases;       // H, phases[0] == 1
    std::vector<std::size_t> base;  // g for each extension element
    std::vector<std::size_t> phase_index;  // index into `phases` for each element

    std::size_t index_of(std::size_t g, std::size_t h) const;
};

/// Schur's construction: elements (g, h) with h in the group H generated by
/// the factor system, product (g,h)(g',h') = (gg', gamma(g,g') h h'). The
/// element (g, 1) sits at index g. Throws InfinitePhaseGroup when H does not
/// close within `max_phase_order` elements.
CentralExtension central_extension(const ProjectiveRep &p, std::size_t max_phase_order = 64);

/// Left regular representation in the group's element order.
Representation regular_representation(const GroupPtr &group);
/// phi(g) = g.
Representation natural_representation(const GroupPtr &group);

/// Z_{n1} x ... x Z_{nk} with elements in lexicographic order of
/// (a1, ..., ak), realized faithfully by diagonal roots of unity.
MatrixGroup abelian_group(std::span<const std::size_t> orders);
/// Lexicographic index of (a1, ..., ak) in abelian_group(orders).
std::size_t abelian_index(std::span<const std::size_t> orders, std::span<const std::size_t> digits);

/// Group generated by diag(w, w^{-1}) and sigma_x with w = exp(2 pi i/m).
MatrixGroup dihedral_group(std::size_t m);
/// Weyl-Heisenberg group <S_m, T_m>, order m^3 (m^2 modulo phases).
MatrixGroup weyl_heisenberg_group(std::size_t m, bool phase_quotient = false);

/// Z_n acting on C^d by 1 -> diag(1, w, ..., w^{d-1}), w = exp(2 pi i/n).
Representation cyclic_diagonal_representation(std::size_t n, std::size_t d);

/// Direct sum of representations of the same group.
Representation direct_sum(const Representation &a, const Representation &b);
/// Conjugates every image: U rho(g) U^dagger.
Representation conjugate(const Representation &rep, const Matrix &u);

}  // namespace covneu
