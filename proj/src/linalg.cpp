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

#include "covneu/linalg.hpp"

#include <cmath>
#include <string>

#include "covneu/error.hpp"
#include "covneu/tolerance.hpp"

namespace covneu {

cplx root_of_unity(long long n, long long k) {
    k %= n;
    if (k < 0) k += n;
    // Exact values at multiples of a quarter turn keep permutation-like
    // products free of 1e-17 noise.
    if (k == 0) return {1.0, 0.0};
    if (2 * k == n) return {-1.0, 0.0};
    if (4 * k == n) return {0.0, 1.0};
    if (4 * k == 3 * n) return {0.0, -1.0};
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

Matrix identity(std::size_t n) { return Matrix::Identity(n, n); }

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix direct_sum(const Matrix &a, const Matrix &b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Matrix direct_sum(std::span<const Matrix> blocks) {
    Eigen::Index rows = 0, cols = 0;
    for (const auto &b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix out = Matrix::Zero(rows, cols);
    Eigen::Index r = 0, c = 0;
    for (const auto &b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

double max_abs(const Matrix &a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool all_finite(const Matrix &a) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag())) return false;
    return true;
}

double row_orthonormality_deviation(const Matrix &c) {
    return max_abs(c * c.adjoint() - Matrix::Identity(c.rows(), c.rows()));
}

double unitary_deviation(const Matrix &a) {
    if (a.rows() != a.cols())
        fail(ErrorCode::InvalidArgument,
             "unitarity test needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                 std::to_string(a.cols()));
    return row_orthonormality_deviation(a);
}

bool is_unitary(const Matrix &a, double tol) { return unitary_deviation(a) <= tol; }
bool is_unitary(const Matrix &a) { return is_unitary(a, tolerances().unitary); }

Matrix complete_to_unitary(const Matrix &c) {
    return complete_to_unitary(c, tolerances().unitary, tolerances().rank);
}

Matrix complete_to_unitary(const Matrix &c, double unitary_tol, double rank_tol) {
    const Eigen::Index d = c.rows();
    const Eigen::Index n = c.cols();
    if (d > n) fail(ErrorCode::RowsNotOrthonormal, "more rows than columns");
    const double dev = row_orthonormality_deviation(c);
    if (dev > unitary_tol)
        fail(ErrorCode::RowsNotOrthonormal, "C C^dagger deviates from I by " + std::to_string(dev));

    Matrix out(n, n);
    out.topRows(d) = c;
    // Project x onto the complement of the rows found so far:
    // x <- x - (x r^dagger) r keeps x r^dagger = 0 for every unit row r.
    Eigen::Index next = d;
    for (Eigen::Index e = 0; e < n && next < n; ++e) {
        Eigen::RowVectorXcd x = Eigen::RowVectorXcd::Zero(n);
        x(e) = 1.0;
        // Two passes of classical Gram-Schmidt are enough in double precision.
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index r = 0; r < next; ++r) {
                const cplx overlap = (x * out.row(r).adjoint())(0, 0);
                x -= overlap * out.row(r);
            }
        const double norm = x.norm();
        if (norm < rank_tol) continue;
        out.row(next++) = x / norm;
    }
    if (next != n) fail(ErrorCode::RowsNotOrthonormal, "could not complete rows to a basis");
    return out;
}

Matrix fourier(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "fourier(0)");
    Matrix f(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            f(j, k) = s * root_of_unity(static_cast<long long>(n), static_cast<long long>((j * k) % n));
    return f;
}

Matrix permutation_matrix(std::span<const std::size_t> perm) {
    const std::size_t n = perm.size();
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        if (p >= n || seen[p]) fail(ErrorCode::InvalidArgument, "permutation is not a bijection");
        seen[p] = true;
    }
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) out(perm[i], i) = 1.0;
    return out;
}

Matrix shift_matrix(std::size_t m) {
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = (i + 1) % m;
    return permutation_matrix(perm);
}

Matrix clock_matrix(std::size_t m) {
    Matrix out = Matrix::Zero(m, m);
    for (std::size_t i = 0; i < m; ++i)
        out(i, i) = root_of_unity(static_cast<long long>(m), static_cast<long long>(i));
    return out;
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix unitary_power(const Matrix &a, long long exponent) {
    Matrix base = exponent < 0 ? Matrix(a.adjoint()) : a;
    unsigned long long e = static_cast<unsigned long long>(exponent < 0 ? -exponent : exponent);
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    while (e) {
        if (e & 1ULL) result = result * base;
        base = base * base;
        e >>= 1ULL;
    }
    return result;
}

std::size_t numerical_rank(const Matrix &a, double tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++rank;
    return rank;
}

Matrix canonical_phase(const Matrix &a, double tol) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const cplx z = a(i, j);
            if (std::abs(z) > tol) return a * (std::conj(z) / std::abs(z));
        }
    return a;
}

}  // namespace covneu
