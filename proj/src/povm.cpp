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

#include "covneu/povm.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "covneu/error.hpp"
#include "covneu/tolerance.hpp"

namespace covneu {

namespace {

// Hash of the ray through v: rotate the first significant entry to the
// positive real axis and quantize. Used only to shortlist candidates.
std::size_t ray_key(const Vector &v) {
    const double norm = v.norm();
    if (norm == 0.0) return 0;
    Vector u = v / norm;
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (std::abs(u(i)) > 1e-4) {
            u *= std::conj(u(i)) / std::abs(u(i));
            break;
        }
    std::size_t h = std::hash<long long>{}(std::llround(norm * 1e5));
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        h ^= std::hash<long long>{}(std::llround(u(i).real() * 1e5)) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= std::hash<long long>{}(std::llround(u(i).imag() * 1e5)) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
}

class RayIndex {
   public:
    explicit RayIndex(const std::vector<Vector> &vectors) : vectors_(vectors) {
        for (std::size_t i = 0; i < vectors.size(); ++i) buckets_[ray_key(vectors[i])].push_back(i);
    }

    // Index of the vector whose operator matches |w><w|, if any.
    std::optional<std::size_t> find(const Vector &w, double tol) const {
        auto it = buckets_.find(ray_key(w));
        if (it != buckets_.end())
            for (auto i : it->second)
                if (operator_distance(vectors_[i], w) < tol) return i;
        // Quantization boundaries can split a ray across buckets.
        for (std::size_t i = 0; i < vectors_.size(); ++i)
            if (operator_distance(vectors_[i], w) < tol) return i;
        return std::nullopt;
    }

   private:
    const std::vector<Vector> &vectors_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

Matrix outer_sum(const std::vector<Vector> &vectors, std::size_t d) {
    Matrix s = Matrix::Zero(d, d);
    for (const auto &v : vectors) s.noalias() += v * v.adjoint();
    return s;
}

}  // namespace

double operator_distance(const Vector &a, const Vector &b) {
    // ||aa^+ - bb^+||_F^2 = |a|^4 + |b|^4 - 2 |<a|b>|^2
    const double na = a.squaredNorm(), nb = b.squaredNorm();
    const double overlap = std::norm(a.dot(b));
    return std::sqrt(std::max(0.0, na * na + nb * nb - 2.0 * overlap));
}

ValidationReport validate(const RankOnePOVM &p) {
    ValidationReport report;
    for (const auto &v : p.vectors)
        if (static_cast<std::size_t>(v.size()) != p.dim)
            fail(ErrorCode::DimensionMismatch, "POVM vector length differs from dim");
    report.completeness_deviation =
        max_abs(outer_sum(p.vectors, p.dim) - Matrix::Identity(p.dim, p.dim));
    const double dup = tolerances().duplicate;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (operator_distance(p.vectors[i], p.vectors[j]) < dup) report.duplicates.emplace_back(i, j);
    report.passed = report.completeness_deviation <= tolerances().povm && report.duplicates.empty();
    return report;
}

Matrix defining_matrix(const RankOnePOVM &p) {
    Matrix m(p.dim, p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (static_cast<std::size_t>(p.vectors[k].size()) != p.dim)
            fail(ErrorCode::DimensionMismatch, "POVM vector length differs from dim");
        m.col(k) = p.vectors[k];
    }
    return m;
}

RankOnePOVM povm_from_matrix(const Matrix &m) {
    RankOnePOVM p{static_cast<std::size_t>(m.rows()), {}};
    for (Eigen::Index k = 0; k < m.cols(); ++k) p.vectors.emplace_back(m.col(k));
    return p;
}

void check_density_matrix(const Matrix &rho, std::size_t d) {
    if (static_cast<std::size_t>(rho.rows()) != d || static_cast<std::size_t>(rho.cols()) != d)
        fail(ErrorCode::InvalidState, "density matrix must be " + std::to_string(d) + "x" + std::to_string(d));
    if (!all_finite(rho)) fail(ErrorCode::InvalidState, "density matrix has non-finite entries");
    const double tol = tolerances().povm;
    if (max_abs(rho - rho.adjoint()) > tol) fail(ErrorCode::InvalidState, "density matrix is not Hermitian");
    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > tol) fail(ErrorCode::InvalidState, "density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol) fail(ErrorCode::InvalidState, "density matrix is not positive");
}

std::vector<double> probabilities(const RankOnePOVM &p, const Matrix &rho) {
    check_density_matrix(rho, p.dim);
    std::vector<double> out;
    out.reserve(p.size());
    for (const auto &v : p.vectors) out.push_back(v.dot(rho * v).real());
    return out;
}

OrbitPOVM orbit_povm(const Representation &phi, const Vector &psi0, bool phase_quotient) {
    const std::size_t d = phi.degree();
    if (static_cast<std::size_t>(psi0.size()) != d) fail(ErrorCode::DimensionMismatch, "initial vector length");
    if (psi0.norm() == 0.0) fail(ErrorCode::InvalidArgument, "initial vector is zero");

    OrbitPOVM out;
    out.povm.dim = d;
    const double dup = tolerances().duplicate * psi0.squaredNorm();
    for (std::size_t g = 0; g < phi.images.size(); ++g) {
        Vector w = phi.images[g] * psi0;
        if (phase_quotient) {
            bool seen = false;
            for (const auto &u : out.povm.vectors)
                if (operator_distance(u, w) < dup) {
                    seen = true;
                    break;
                }
            if (seen) continue;
        }
        out.povm.vectors.push_back(std::move(w));
        out.representatives.push_back(g);
    }

    const Matrix s = outer_sum(out.povm.vectors, d);
    const double c = s.trace().real() / static_cast<double>(d);
    if (max_abs(s / c - Matrix::Identity(d, d)) > tolerances().povm)
        fail(ErrorCode::NotCompletable, "orbit outer products are not proportional to the identity");
    out.scale = 1.0 / std::sqrt(c);
    for (auto &v : out.povm.vectors) v *= out.scale;
    out.report = validate(out.povm);
    return out;
}

Matrix MonomialRep::image(std::size_t g) const {
    const std::size_t n = degree();
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < n; ++k) m(perm[g][k], k) = phases[g][k];
    return m;
}

Representation MonomialRep::representation() const {
    Representation rep{group, {}};
    rep.images.reserve(perm.size());
    for (std::size_t g = 0; g < perm.size(); ++g) rep.images.push_back(image(g));
    return rep;
}

MonomialRep derive_monomial(const Representation &phi, const RankOnePOVM &p) {
    if (phi.degree() != p.dim) fail(ErrorCode::DimensionMismatch, "representation degree differs from POVM dim");
    const std::size_t n = p.size();
    const RayIndex index(p.vectors);
    const double tol = tolerances().duplicate;

    MonomialRep mon{phi.group, {}, {}};
    mon.perm.resize(phi.images.size());
    mon.phases.resize(phi.images.size());
    for (std::size_t g = 0; g < phi.images.size(); ++g) {
        std::vector<bool> hit(n, false);
        auto &perm = mon.perm[g];
        auto &phases = mon.phases[g];
        perm.resize(n);
        phases.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const Vector w = phi.images[g] * p.vectors[k];
            auto j = index.find(w, tol);
            if (!j || hit[*j])
                fail(ErrorCode::NotCovariant,
                     "group element " + std::to_string(g) + " maps operator " + std::to_string(k) +
                         " outside the POVM");
            hit[*j] = true;
            cplx phase = p.vectors[*j].dot(w) / p.vectors[*j].squaredNorm();
            phase /= std::abs(phase);
            perm[k] = *j;
            phases[k] = phase;
        }
    }
    return mon;
}

bool covariance_check(const Representation &phi, const RankOnePOVM &p) {
    try {
        derive_monomial(phi, p);
        return true;
    } catch (const Error &e) {
        if (e.code() == ErrorCode::NotCovariant) return false;
        throw;
    }
}

CovariantPOVM cyclic_povm(std::size_t n, std::size_t d) {
    if (d > n) fail(ErrorCode::UnsupportedParameter, "cyclic POVM needs d <= n");
    Representation phi = cyclic_diagonal_representation(n, d);
    Vector psi = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(n)));
    OrbitPOVM orbit = orbit_povm(phi, psi, false);
    return {std::move(orbit.povm), std::move(phi)};
}

CovariantPOVM dihedral_povm(std::size_t m, cplx alpha, cplx beta) {
    if (m < 2) fail(ErrorCode::UnsupportedParameter, "dihedral POVM needs m >= 2");
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0 / static_cast<double>(m)) > tolerances().povm)
        fail(ErrorCode::NotNormalized, "dihedral POVM needs |alpha|^2 + |beta|^2 = 1/m");
    auto group = std::make_shared<const MatrixGroup>(dihedral_group(m));
    RankOnePOVM p{2, {}};
    const auto mm = static_cast<long long>(m);
    for (std::size_t j = 0; j < m; ++j) {
        Vector v(2);
        v << alpha, beta * root_of_unity(mm, static_cast<long long>(j));
        p.vectors.push_back(v);
    }
    for (std::size_t j = 0; j < m; ++j) {
        Vector v(2);
        v << beta, alpha * root_of_unity(mm, static_cast<long long>(j));
        p.vectors.push_back(v);
    }
    return {std::move(p), natural_representation(group)};
}

CovariantPOVM wh_povm(std::size_t m, const Vector &v) {
    if (static_cast<std::size_t>(v.size()) != m) fail(ErrorCode::DimensionMismatch, "WH vector length must be m");
    if (std::abs(v.squaredNorm() - 1.0 / static_cast<double>(m)) > tolerances().povm)
        fail(ErrorCode::NotNormalized, "WH initial vector needs squared norm 1/m");
    auto group = std::make_shared<const MatrixGroup>(weyl_heisenberg_group(m, false));
    const Matrix s = shift_matrix(m), t = clock_matrix(m);
    RankOnePOVM p{m, {}};
    Vector sj = v;
    for (std::size_t j = 0; j < m; ++j) {
        Vector col = sj;
        for (std::size_t l = 0; l < m; ++l) {
            p.vectors.push_back(col);
            col = t * col;
        }
        sj = s * sj;
    }
    return {std::move(p), natural_representation(group)};
}

Vector wh_symmetric_vector(std::size_t m, cplx alpha) {
    if (m < 2 || (m & (m - 1)) != 0) fail(ErrorCode::UnsupportedParameter, "m must be a power of two >= 2");
    Vector v(m);
    cplx power{1.0, 0.0};
    for (std::size_t i = 0; i < m / 2; ++i) {
        v(i) = power;
        v(m - 1 - i) = power;
        power *= alpha;
    }
    double kappa = 0.0;
    for (std::size_t i = 0; i < m / 2; ++i) kappa += std::pow(std::abs(alpha), 2.0 * static_cast<double>(i));
    kappa *= 2.0 * static_cast<double>(m);
    return v / std::sqrt(kappa);
}

}  // namespace covneu
