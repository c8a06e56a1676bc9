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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace covneu {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// exp(2 pi i k / n), reduced mod n first so that exact roots come out
/// exact for the quarter turns.
cplx root_of_unity(long long n, long long k);

Matrix identity(std::size_t n);

Matrix kron(const Matrix &a, const Matrix &b);
Matrix direct_sum(const Matrix &a, const Matrix &b);
Matrix direct_sum(std::span<const Matrix> blocks);

/// Max-abs entry of A A^dagger - I. Throws InvalidArgument for non-square input.
double unitary_deviation(const Matrix &a);
bool is_unitary(const Matrix &a, double tol);
bool is_unitary(const Matrix &a);

double max_abs(const Matrix &a);
bool all_finite(const Matrix &a);

/// Max-abs entry of C C^dagger - I_d.
double row_orthonormality_deviation(const Matrix &c);

/// Extends a d x n matrix with orthonormal rows to an n x n unitary. The
/// first d rows are copied verbatim; the remaining rows come from
/// Gram-Schmidt on e_0, e_1, ... (ascending index), skipping any basis vector
/// whose residual norm is below the rank tolerance.
/// Throws RowsNotOrthonormal if C C^dagger deviates from I by more than the
/// unitary tolerance.
Matrix complete_to_unitary(const Matrix &c);
Matrix complete_to_unitary(const Matrix &c, double unitary_tol, double rank_tol);

/// Unitary DFT, F_n = (1/sqrt n) (w^{jk}) with w = exp(2 pi i / n).
Matrix fourier(std::size_t n);

/// sum_i |perm[i]><i|. Throws InvalidArgument unless perm is a bijection.
Matrix permutation_matrix(std::span<const std::size_t> perm);

/// Cyclic shift S_m |i> = |i+1 mod m>.
Matrix shift_matrix(std::size_t m);
/// Clock matrix T_m = diag(1, w, ..., w^{m-1}).
Matrix clock_matrix(std::size_t m);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Integer power of a square matrix; negative exponents use the adjoint
/// (callers only pass unitaries).
Matrix unitary_power(const Matrix &a, long long exponent);

/// Numerical rank from singular values above `tol` (relative to 1).
std::size_t numerical_rank(const Matrix &a, double tol);

/// Multiplies `a` by the phase that makes its first entry (row-major scan)
/// with modulus above `tol` real and positive.
Matrix canonical_phase(const Matrix &a, double tol);

}  // namespace covneu
