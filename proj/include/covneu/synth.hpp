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
#include <optional>
#include <string>
#include <vector>

#include "covneu/intertwine.hpp"
#include "covneu/povm.hpp"
#include "covneu/repdec.hpp"

namespace covneu {

struct SynthesisOptions {
    std::optional<FamilySpec> family;  // closed-form U and W instead of numeric decomposition
    std::optional<Matrix> v;           // unitary acting on the added rows; identity if unset
    DecomposeOptions decompose;
    std::size_t verify_trials = 100;
    std::uint64_t verify_seed = 42;
};

struct VerificationReport {
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double max_deviation = 0.0;    // max_k |p_k - tilde p_k| over all trials
    double max_sum_error = 0.0;    // max |sum_k tilde p_k - 1|
};

struct SynthesisResult {
    Matrix m;        // defining matrix
    Matrix tilde_m;  // n x n unitary with M as its top rows
    Representation phi;        // ordinary representation actually used
    Representation mon;        // monomial representation on the columns of M
    Representation phi_prime;  // V^dagger phi' V
    std::vector<std::size_t> tau;
    Matrix u, w, tilde_c, v;
    Decomposition dec_phi, dec_mon;
    CoefficientBlocks coefficients;
    bool central_extension = false;
    std::string basis_source;  // "numeric" or the family name
    double top_rows_deviation = 0.0;  // before the top rows are pinned to M
    double symmetry_defect = 0.0;     // max |(phi + phi') tilde M - tilde M phi_mon|
    VerificationReport verification;
};

/// Plain dilation: any unitary completion of M, ignoring symmetry.
Matrix neumark_plain(const Matrix &m);

/// Symmetry-preserving dilation of a rank-one POVM covariant under phi.
/// A projective phi (or one defined on a phase-quotient group) is replaced
/// by its central extension first. Throws NotCovariant, NotAConstituent,
/// DecompositionFailed, or RowsNotOrthonormal when M M^dagger != I.
SynthesisResult synthesize(const RankOnePOVM &p, const Representation &phi, const SynthesisOptions &options = {});

/// Seeded mixed states 0.9 |psi><psi| + 0.1 I/d with Haar-random psi.
std::vector<Matrix> random_density_matrices(std::size_t d, std::size_t count, std::uint64_t seed);

/// Outcome distribution of the orthogonal measurement: diagonal of
/// tilde M^dagger (rho + 0) tilde M.
std::vector<double> dilated_probabilities(const Matrix &tilde_m, const Matrix &rho);

/// Compares p_k = <Psi_k|rho|Psi_k> with the dilated distribution.
VerificationReport verify(const Matrix &tilde_m, const RankOnePOVM &p, std::size_t trials, std::uint64_t seed);

/// Smallest q with 2^q >= n.
std::size_t qubits_for(std::size_t n);
/// U + I_{2^q - n}.
Matrix pad_to_qubits(const Matrix &u);

}  // namespace covneu
