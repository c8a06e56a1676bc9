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
#include <utility>
#include <vector>

#include "covneu/groups.hpp"
#include "covneu/linalg.hpp"

namespace covneu {

/// Rank-one POVM {|Psi_k><Psi_k|}; the vectors need not be normalized.
struct RankOnePOVM {
    std::size_t dim = 0;
    std::vector<Vector> vectors;

    std::size_t size() const { return vectors.size(); }
};

struct ValidationReport {
    double completeness_deviation = 0.0;  // max |sum_k A_k - I|
    std::vector<std::pair<std::size_t, std::size_t>> duplicates;
    bool passed = false;
};

ValidationReport validate(const RankOnePOVM &p);

/// d x n matrix whose columns are the POVM vectors.
Matrix defining_matrix(const RankOnePOVM &p);
RankOnePOVM povm_from_matrix(const Matrix &m);

/// Frobenius distance between |a><a| and |b><b|.
double operator_distance(const Vector &a, const Vector &b);

/// Throws InvalidState unless rho is a d x d density matrix.
void check_density_matrix(const Matrix &rho, std::size_t d);

/// p_k = <Psi_k|rho|Psi_k>.
std::vector<double> probabilities(const RankOnePOVM &p, const Matrix &rho);

struct OrbitPOVM {
    RankOnePOVM povm;
    std::vector<std::size_t> representatives;  // group element producing each vector
    ValidationReport report;
    double scale = 1.0;                        // factor applied to every orbit vector
};

/// Orbit phi(g)|psi0> in group element order, optionally merging vectors
/// that agree up to a global phase (first occurrence wins), rescaled so the
/// outer products sum to the identity. Throws NotCompletable when the orbit
/// sum is not proportional to the identity.
OrbitPOVM orbit_povm(const Representation &phi, const Vector &psi0, bool phase_quotient);

/// phi(g)|Psi_k> = phases[g][k] |Psi_{perm[g][k]}>.
struct MonomialRep {
    GroupPtr group;
    std::vector<std::vector<std::size_t>> perm;
    std::vector<std::vector<cplx>> phases;

    std::size_t degree() const { return perm.empty() ? 0 : perm[0].size(); }
    Matrix image(std::size_t g) const;
    Representation representation() const;
};

/// Throws NotCovariant if some phi(g) A_k phi(g)^dagger is not in the set.
MonomialRep derive_monomial(const Representation &phi, const RankOnePOVM &p);

/// True iff conjugation by every phi(g) permutes the operator set.
bool covariance_check(const Representation &phi, const RankOnePOVM &p);

/// A POVM together with the representation it is covariant under.
struct CovariantPOVM {
    RankOnePOVM povm;
    Representation phi;
};

/// Orbit of (1, ..., 1)/sqrt(n) under Z_n acting by diag(1, w, ..., w^{d-1}).
CovariantPOVM cyclic_povm(std::size_t n, std::size_t d);

/// Dihedral POVM on C^2 for D_{2m}: column j is (alpha, beta w^j), column
/// m + j is (beta, alpha w^j). Needs |alpha|^2 + |beta|^2 = 1/m.
CovariantPOVM dihedral_povm(std::size_t m, cplx alpha, cplx beta);

/// Weyl-Heisenberg POVM on C^m with column j*m + l equal to T^l S^j v,
/// covariant under the full group of order m^3. Needs |v|^2 = 1/m.
CovariantPOVM wh_povm(std::size_t m, const Vector &v);

/// (1, a, ..., a^{m/2-1}, a^{m/2-1}, ..., a, 1) normalized to squared norm 1/m.
Vector wh_symmetric_vector(std::size_t m, cplx alpha);

}  // namespace covneu
