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

#include "covneu/intertwine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covneu/error.hpp"
#include "covneu/tolerance.hpp"

namespace covneu {

namespace {

cplx frobenius_dot(const Matrix &a, const Matrix &b) { return (a.adjoint() * b).trace(); }

std::size_t find_class(std::vector<ClassBlocks> &classes, std::size_t label, std::size_t degree) {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].label == label) return i;
    classes.push_back({label, degree, 0, 0});
    return classes.size() - 1;
}

}  // namespace

double intertwining_defect(const Representation &phi, const Representation &psi, const Matrix &t) {
    double worst = 0.0;
    for (std::size_t g = 0; g < phi.images.size(); ++g)
        worst = std::max(worst, max_abs(phi.images[g] * t - t * psi.images[g]));
    return worst;
}

IntertwinerBasis intertwiner_basis(const Representation &phi, const Representation &psi) {
    if (phi.images.size() != psi.images.size()) fail(ErrorCode::InvalidArgument, "representations of different groups");
    const auto rows = static_cast<Eigen::Index>(phi.degree());
    const auto cols = static_cast<Eigen::Index>(psi.degree());
    const cplx ip = character_inner_product(phi, psi);
    const auto expected = static_cast<std::size_t>(std::llround(ip.real()));
    const double inv = 1.0 / static_cast<double>(phi.images.size());

    IntertwinerBasis out;
    for (Eigen::Index i = 0; i < rows && out.dim() < expected; ++i)
        for (Eigen::Index j = 0; j < cols && out.dim() < expected; ++j) {
            // Average of phi(g) E_ij psi(g)^dagger is a sum of outer products.
            Matrix t = Matrix::Zero(rows, cols);
            for (std::size_t g = 0; g < phi.images.size(); ++g)
                t.noalias() += phi.images[g].col(i) * psi.images[g].col(j).adjoint();
            t *= inv;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto &b : out.basis) t -= frobenius_dot(b, t) * b;
            const double norm = t.norm();
            if (norm < tolerances().rank) continue;
            out.basis.push_back(t / norm);
        }
    return out;
}

StructureReport structure_check(const IntertwinerBasis &basis, const Representation &left,
                                const Decomposition &dec_left, const Representation &right,
                                const Decomposition &dec_right) {
    const Decomposition aligned = align_to(right, dec_right, left, dec_left);
    StructureReport report;
    for (const auto &b : dec_left.blocks) ++report.classes[find_class(report.classes, b.label, b.degree)].left_count;
    for (const auto &b : aligned.blocks) ++report.classes[find_class(report.classes, b.label, b.degree)].right_count;
    for (const auto &c : report.classes) report.expected_dim += c.left_count * c.right_count;

    const double tol = tolerances().dec;
    for (std::size_t e = 0; e < basis.basis.size(); ++e) {
        const Matrix x = dec_left.base_change * basis.basis[e] * aligned.base_change.adjoint();
        for (const auto &a : dec_left.blocks)
            for (const auto &b : aligned.blocks) {
                const Matrix sub = x.block(a.offset, b.offset, a.degree, b.degree);
                double defect;
                if (a.label == b.label) {
                    const cplx lambda = sub.trace() / static_cast<double>(a.degree);
                    defect = max_abs(sub - lambda * Matrix::Identity(a.degree, a.degree));
                } else {
                    defect = max_abs(sub);
                }
                report.max_defect = std::max(report.max_defect, defect);
                if (defect > tol)
                    fail(ErrorCode::StructureViolation,
                         "basis element " + std::to_string(e) + " violates block structure at (" +
                             std::to_string(a.offset) + ", " + std::to_string(b.offset) + "): " +
                             std::to_string(defect));
            }
    }
    if (basis.dim() != report.expected_dim)
        fail(ErrorCode::StructureViolation, "intertwiner dimension " + std::to_string(basis.dim()) +
                                                " differs from block count " + std::to_string(report.expected_dim));
    return report;
}

Extension build_phi_prime(const Representation &phi, const Decomposition &dec_phi, const Representation &mon,
                          const Decomposition &dec_mon) {
    Extension ext;
    ext.dec_phi = align_to(phi, dec_phi, mon, dec_mon);
    ext.dec_mon = dec_mon;

    const std::size_t nmon = dec_mon.blocks.size();
    std::vector<bool> used(nmon, false);
    for (const auto &b : ext.dec_phi.blocks) {
        std::size_t match = nmon;
        for (std::size_t j = 0; j < nmon; ++j)
            if (!used[j] && dec_mon.blocks[j].label == b.label) {
                match = j;
                break;
            }
        if (match == nmon)
            fail(ErrorCode::NotAConstituent, "an irreducible of phi is missing from phi_mon (or occurs less often)");
        used[match] = true;
        ext.tau.push_back(match);
        ext.left_blocks.push_back(b);
    }

    std::size_t offset = phi.degree();
    std::vector<std::size_t> surplus;
    for (std::size_t j = 0; j < nmon; ++j)
        if (!used[j]) {
            surplus.push_back(j);
            ext.tau.push_back(j);
            ext.left_blocks.push_back({offset, dec_mon.blocks[j].degree, dec_mon.blocks[j].label});
            offset += dec_mon.blocks[j].degree;
        }

    const std::size_t extra = mon.degree() - phi.degree();
    ext.phi_prime.group = mon.group;
    ext.phi_prime.images.reserve(mon.images.size());
    for (std::size_t g = 0; g < mon.images.size(); ++g) {
        Matrix img = Matrix::Zero(extra, extra);
        std::size_t at = 0;
        for (auto j : surplus) {
            const auto &b = dec_mon.blocks[j];
            const Matrix rows = dec_mon.base_change.middleRows(b.offset, b.degree);
            img.block(at, at, b.degree, b.degree) = rows * mon.images[g] * rows.adjoint();
            at += b.degree;
        }
        ext.phi_prime.images.push_back(std::move(img));
    }
    return ext;
}

Matrix complete_intertwiner(const Matrix &c, const Extension &ext, CoefficientBlocks *coefficients) {
    const auto d = static_cast<std::size_t>(c.rows());
    const auto n = static_cast<std::size_t>(c.cols());
    if (n != ext.dec_mon.dim()) fail(ErrorCode::DimensionMismatch, "C has the wrong number of columns");
    const std::size_t phi_blocks = ext.dec_phi.blocks.size();

    CoefficientBlocks local;
    CoefficientBlocks &cb = coefficients ? *coefficients : local;
    cb = CoefficientBlocks{};
    auto class_of = [&](std::size_t label) {
        for (std::size_t i = 0; i < cb.labels.size(); ++i)
            if (cb.labels[i] == label) return i;
        cb.labels.push_back(label);
        cb.left.emplace_back();
        cb.right.emplace_back();
        return cb.labels.size() - 1;
    };
    for (std::size_t i = 0; i < ext.left_blocks.size(); ++i) cb.left[class_of(ext.left_blocks[i].label)].push_back(i);
    for (std::size_t j = 0; j < ext.dec_mon.blocks.size(); ++j)
        cb.right[class_of(ext.dec_mon.blocks[j].label)].push_back(j);

    Matrix recon = Matrix::Zero(d, n);
    cb.coefficients.clear();
    for (std::size_t k = 0; k < cb.labels.size(); ++k) {
        const auto &lefts = cb.left[k];
        const auto &rights = cb.right[k];
        if (lefts.size() != rights.size())
            fail(ErrorCode::NotInIntertwiningSpace, "class multiplicities differ between the two sides");
        std::size_t upper = 0;
        for (auto a : lefts) upper += a < phi_blocks ? 1 : 0;
        Matrix lambda(upper, rights.size());
        for (std::size_t r = 0; r < upper; ++r)
            for (std::size_t s = 0; s < rights.size(); ++s) {
                const auto &a = ext.left_blocks[lefts[r]];
                const auto &b = ext.dec_mon.blocks[rights[s]];
                const Matrix sub = c.block(a.offset, b.offset, a.degree, b.degree);
                lambda(r, s) = sub.trace() / static_cast<double>(a.degree);
                recon.block(a.offset, b.offset, a.degree, b.degree) =
                    lambda(r, s) * Matrix::Identity(a.degree, a.degree);
            }
        cb.coefficients.push_back(std::move(lambda));
    }
    // Left blocks of phi come first, so a class's upper rows are its first rows.
    const double off = max_abs(recon - c);
    if (off > tolerances().dec)
        fail(ErrorCode::NotInIntertwiningSpace, "C is not block-scalar; deviation " + std::to_string(off));

    Matrix tilde = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < cb.labels.size(); ++k) {
        Matrix full = complete_to_unitary(cb.coefficients[k], tolerances().dec, tolerances().rank);
        const auto &lefts = cb.left[k];
        const auto &rights = cb.right[k];
        for (std::size_t r = 0; r < lefts.size(); ++r)
            for (std::size_t s = 0; s < rights.size(); ++s) {
                const auto &a = ext.left_blocks[lefts[r]];
                const auto &b = ext.dec_mon.blocks[rights[s]];
                tilde.block(a.offset, b.offset, a.degree, b.degree) = full(r, s) * Matrix::Identity(a.degree, a.degree);
            }
        cb.coefficients[k] = std::move(full);
    }
    tilde.topRows(d) = c;
    return tilde;
}

ConstituentReport constituent_check(const Representation &psi1, const Representation &psi2, const Matrix &m) {
    if (static_cast<std::size_t>(m.rows()) != psi1.degree() || static_cast<std::size_t>(m.cols()) != psi2.degree())
        fail(ErrorCode::HypothesisViolated, "M has the wrong shape");
    const double defect = intertwining_defect(psi1, psi2, m);
    if (defect > tolerances().dec)
        fail(ErrorCode::HypothesisViolated, "psi1 M != M psi2; defect " + std::to_string(defect));
    const std::size_t rank = numerical_rank(m, tolerances().rank);
    if (rank != psi1.degree())
        fail(ErrorCode::HypothesisViolated,
             "rank of M is " + std::to_string(rank) + ", expected " + std::to_string(psi1.degree()));

    ConstituentReport report;
    report.holds = true;
    const Decomposition dec = decompose(psi1);
    std::vector<std::size_t> seen;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        if (std::find(seen.begin(), seen.end(), dec.blocks[b].label) != seen.end()) continue;
        seen.push_back(dec.blocks[b].label);
        const Representation irrep = block_representation(psi1, dec, b);
        ClassBlocks cls{dec.blocks[b].label, dec.blocks[b].degree,
                        static_cast<std::size_t>(std::llround(character_inner_product(psi1, irrep).real())),
                        static_cast<std::size_t>(std::llround(character_inner_product(psi2, irrep).real()))};
        if (cls.left_count > cls.right_count) report.holds = false;
        report.classes.push_back(cls);
    }
    return report;
}

}  // namespace covneu
