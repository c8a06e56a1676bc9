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

#include "covneu/repdec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "covneu/error.hpp"
#include "covneu/povm.hpp"
#include "covneu/tolerance.hpp"

namespace covneu {

namespace {

constexpr double kCharacterTol = 1e-6;

std::vector<Matrix> restrict_images(const Representation &rho, const Matrix &rows) {
    std::vector<Matrix> out;
    out.reserve(rho.images.size());
    for (const auto &img : rho.images) out.push_back(rows * img * rows.adjoint());
    return out;
}

// (1/|G|) sum_g a(g) X b(g)^dagger
Matrix average(const std::vector<Matrix> &a, const Matrix &x, const std::vector<Matrix> &b) {
    Matrix acc = Matrix::Zero(a[0].rows(), b[0].rows());
    for (std::size_t g = 0; g < a.size(); ++g) acc.noalias() += a[g] * x * b[g].adjoint();
    return acc / static_cast<double>(a.size());
}

double character_norm(const std::vector<Matrix> &images) {
    double s = 0.0;
    for (const auto &img : images) s += std::norm(img.trace());
    return s / static_cast<double>(images.size());
}

bool same_character(const std::vector<Matrix> &a, const std::vector<Matrix> &b) {
    if (a[0].rows() != b[0].rows()) return false;
    for (std::size_t g = 0; g < a.size(); ++g)
        if (std::abs(a[g].trace() - b[g].trace()) > kCharacterTol) return false;
    return true;
}

bool same_images(const std::vector<Matrix> &a, const std::vector<Matrix> &b, double tol) {
    if (a[0].rows() != b[0].rows()) return false;
    for (std::size_t g = 0; g < a.size(); ++g)
        if (max_abs(a[g] - b[g]) > tol) return false;
    return true;
}

// Commutant dimension from averaging every matrix unit E_ij.
std::size_t commutant_dimension(const std::vector<Matrix> &images) {
    const Eigen::Index r = images[0].rows();
    Matrix stacked(r * r, r * r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) {
            Matrix e = Matrix::Zero(r, r);
            e(i, j) = 1.0;
            const Matrix avg = average(images, e, images);
            stacked.col(i * r + j) = Eigen::Map<const Vector>(avg.data(), r * r);
        }
    return numerical_rank(stacked, tolerances().rank);
}

Matrix random_hermitian(Eigen::Index r, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix x(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) x(i, j) = cplx(normal(rng), normal(rng));
    return 0.5 * (x + x.adjoint());
}

Matrix intertwiner_from_images(const std::vector<Matrix> &a, const std::vector<Matrix> &b) {
    const Eigen::Index r = a[0].rows();
    if (same_images(a, b, tolerances().dec)) return Matrix::Identity(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j) {
            Matrix e = Matrix::Zero(r, b[0].rows());
            e(i, j) = 1.0;
            Matrix q = average(a, e, b);
            const double s = std::sqrt((q * q.adjoint()).trace().real() / static_cast<double>(r));
            if (s < 1e-6) continue;
            q /= s;
            if (unitary_deviation(q) > tolerances().dec)
                fail(ErrorCode::DecompositionFailed, "averaged intertwiner is not unitary; blocks are reducible");
            return canonical_phase(q, tolerances().dec);
        }
    fail(ErrorCode::DecompositionFailed, "representations are not equivalent");
}

class Splitter {
   public:
    Splitter(const Representation &rho, const DecomposeOptions &options)
        : rho_(rho), options_(options), rng_(options.seed) {}

    void split(const Matrix &rows) {
        const Eigen::Index r = rows.rows();
        if (r == 1) {
            blocks_.push_back(rows);
            return;
        }
        const auto images = restrict_images(rho_, rows);
        if (std::abs(character_norm(images) - 1.0) < 0.25) {
            if (commutant_dimension(images) != 1)
                fail(ErrorCode::DecompositionFailed, "character and commutant disagree on irreducibility");
            blocks_.push_back(rows);
            return;
        }
        for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
            Matrix t = average(images, random_hermitian(r, rng_), images);
            t = 0.5 * (t + t.adjoint());
            Eigen::SelfAdjointEigenSolver<Matrix> eig(t);
            const auto &values = eig.eigenvalues();
            const double spread = values(r - 1) - values(0);
            if (spread <= 0.0) continue;
            std::vector<Eigen::Index> starts{0};
            bool ambiguous = false;
            for (Eigen::Index i = 0; i + 1 < r; ++i) {
                const double gap = (values(i + 1) - values(i)) / spread;
                if (gap >= options_.cluster_gap) starts.push_back(i + 1);
                else if (gap > options_.cluster_gap * 1e-3) ambiguous = true;
            }
            if (ambiguous || starts.size() < 2) continue;
            starts.push_back(r);
            for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
                const Eigen::Index lo = starts[c], len = starts[c + 1] - starts[c];
                split(eig.eigenvectors().middleCols(lo, len).adjoint() * rows);
            }
            return;
        }
        fail(ErrorCode::DecompositionFailed,
             "eigenvalue clustering ambiguous after " + std::to_string(options_.max_retries) + " reseeds");
    }

    std::vector<Matrix> &blocks() { return blocks_; }

   private:
    const Representation &rho_;
    const DecomposeOptions &options_;
    std::mt19937_64 rng_;
    std::vector<Matrix> blocks_;
};

// Labels blocks by character, conjugates later copies onto the first block of
// their class and assembles the decomposition. With `sort` the blocks are
// ordered by (degree, first occurrence of the class).
Decomposition assemble(const Representation &rho, std::vector<Matrix> block_rows, bool sort) {
    const std::size_t nb = block_rows.size();
    std::vector<std::vector<Matrix>> images(nb);
    for (std::size_t b = 0; b < nb; ++b) images[b] = restrict_images(rho, block_rows[b]);

    std::vector<std::size_t> cls(nb);
    std::vector<std::size_t> first_of_class;
    for (std::size_t b = 0; b < nb; ++b) {
        std::size_t c = 0;
        for (; c < first_of_class.size(); ++c)
            if (same_character(images[first_of_class[c]], images[b])) break;
        if (c == first_of_class.size()) first_of_class.push_back(b);
        cls[b] = c;
        if (first_of_class[c] != b) {
            const Matrix q = intertwiner_from_images(images[first_of_class[c]], images[b]);
            block_rows[b] = q * block_rows[b];
            images[b] = restrict_images(rho, block_rows[b]);
        }
    }

    std::vector<std::size_t> order(nb);
    std::iota(order.begin(), order.end(), 0);
    if (sort) {
        // Within one degree, classes are ordered by the phase of their
        // character at each generator, so Z_n yields the characters w^0, w^1, ...
        std::vector<std::vector<long long>> key(first_of_class.size());
        for (std::size_t c = 0; c < first_of_class.size(); ++c)
            for (auto gen : rho.group->generators()) {
                const cplx chi = images[first_of_class[c]][gen].trace();
                if (std::abs(chi) < kCharacterTol) {
                    key[c].push_back(-1);
                    continue;
                }
                double turn = std::arg(chi) / (2.0 * kPi);
                if (turn < 0.0) turn += 1.0;
                auto q = std::llround(turn * 1e6);
                key[c].push_back(q == 1000000 ? 0 : q);
            }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto da = block_rows[a].rows(), db = block_rows[b].rows();
            if (da != db) return da < db;
            if (key[cls[a]] != key[cls[b]]) return key[cls[a]] < key[cls[b]];
            return cls[a] < cls[b];
        });
    }

    Decomposition dec;
    dec.base_change = Matrix(rho.degree(), rho.degree());
    std::vector<std::size_t> relabel(first_of_class.size(), SIZE_MAX);
    std::size_t next_label = 0, offset = 0;
    for (auto b : order) {
        if (relabel[cls[b]] == SIZE_MAX) relabel[cls[b]] = next_label++;
        const auto deg = static_cast<std::size_t>(block_rows[b].rows());
        dec.base_change.middleRows(offset, deg) = block_rows[b];
        dec.blocks.push_back({offset, deg, relabel[cls[b]]});
        offset += deg;
    }
    if (offset != rho.degree()) fail(ErrorCode::DecompositionFailed, "blocks do not cover the space");
    const double defect = decomposition_defect(rho, dec);
    if (defect > tolerances().dec)
        fail(ErrorCode::DecompositionFailed, "decomposition defect " + std::to_string(defect));
    dec.images_checked = true;
    return dec;
}

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

Decomposition decompose(const Representation &rho, const DecomposeOptions &options) {
    if (rho.images.empty()) fail(ErrorCode::InvalidArgument, "empty representation");
    const auto d = static_cast<Eigen::Index>(rho.degree());
    Splitter splitter(rho, options);
    splitter.split(Matrix::Identity(d, d));
    auto &blocks = splitter.blocks();
    for (auto &rows : blocks)
        for (Eigen::Index i = 0; i < rows.rows(); ++i) rows.row(i) = canonical_phase(Matrix(rows.row(i)), tolerances().dec);
    return assemble(rho, std::move(blocks), true);
}

Decomposition decomposition_from_base_change(const Representation &rho, const Matrix &u) {
    const auto d = static_cast<std::size_t>(rho.degree());
    if (static_cast<std::size_t>(u.rows()) != d || unitary_deviation(u) > tolerances().dec)
        fail(ErrorCode::DecompositionFailed, "base change is not a unitary of the right size");
    const auto conj = restrict_images(rho, u);

    // Connected components of the coupling graph of U rho U^dagger.
    std::vector<std::size_t> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto &img : conj)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (std::abs(img(i, j)) > tolerances().dec) parent[find(i)] = find(j);

    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of(d, SIZE_MAX);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t root = find(i);
        if (component_of[root] == SIZE_MAX) {
            component_of[root] = components.size();
            components.emplace_back();
        }
        components[component_of[root]].push_back(i);
    }

    std::vector<Matrix> block_rows;
    for (const auto &comp : components) {
        Matrix rows(comp.size(), d);
        for (std::size_t i = 0; i < comp.size(); ++i) rows.row(i) = u.row(comp[i]);
        const auto images = restrict_images(rho, rows);
        if (comp.size() > 1 && std::abs(character_norm(images) - 1.0) > 0.25)
            fail(ErrorCode::DecompositionFailed, "base change leaves a reducible block");
        block_rows.push_back(std::move(rows));
    }
    return assemble(rho, std::move(block_rows), false);
}

double decomposition_defect(const Representation &rho, const Decomposition &dec) {
    const auto d = static_cast<Eigen::Index>(rho.degree());
    double worst = unitary_deviation(dec.base_change);
    std::vector<Eigen::Index> owner(d);
    for (std::size_t b = 0; b < dec.blocks.size(); ++b)
        for (std::size_t i = 0; i < dec.blocks[b].degree; ++i)
            owner[dec.blocks[b].offset + i] = static_cast<Eigen::Index>(b);
    std::vector<std::size_t> first(dec.blocks.size());
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        first[b] = b;
        for (std::size_t c = 0; c < b; ++c)
            if (dec.blocks[c].label == dec.blocks[b].label) {
                first[b] = c;
                break;
            }
    }
    for (const auto &img : rho.images) {
        const Matrix conj = dec.base_change * img * dec.base_change.adjoint();
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                if (owner[i] != owner[j]) worst = std::max(worst, std::abs(conj(i, j)));
        for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
            if (first[b] == b) continue;
            const auto &bb = dec.blocks[b];
            const auto &fb = dec.blocks[first[b]];
            if (bb.degree != fb.degree) return std::numeric_limits<double>::infinity();
            const auto n = static_cast<Eigen::Index>(bb.degree);
            worst = std::max(worst, max_abs(conj.block(bb.offset, bb.offset, n, n) -
                                            conj.block(fb.offset, fb.offset, n, n)));
        }
    }
    return worst;
}

Representation block_representation(const Representation &rho, const Decomposition &dec, std::size_t block) {
    const auto &b = dec.blocks.at(block);
    return Representation{rho.group, restrict_images(rho, dec.base_change.middleRows(b.offset, b.degree))};
}

Matrix unitary_intertwiner(const Representation &a, const Representation &b) {
    return intertwiner_from_images(a.images, b.images);
}

cplx character_inner_product(const Representation &a, const Representation &b) {
    if (a.images.size() != b.images.size()) fail(ErrorCode::InvalidArgument, "representations of different groups");
    cplx s{};
    for (std::size_t g = 0; g < a.images.size(); ++g) s += a.images[g].trace() * std::conj(b.images[g].trace());
    return s / static_cast<double>(a.images.size());
}

std::vector<ClassCount> multiplicities(const Representation &rho, const Decomposition &dec) {
    std::vector<ClassCount> out;
    std::vector<std::size_t> rep_block;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        auto it = std::find_if(out.begin(), out.end(), [&](const ClassCount &c) { return c.label == dec.blocks[b].label; });
        if (it == out.end()) {
            out.push_back({dec.blocks[b].label, dec.blocks[b].degree, 1});
            rep_block.push_back(b);
        } else {
            ++it->count;
        }
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
        const cplx ip = character_inner_product(rho, block_representation(rho, dec, rep_block[c]));
        if (std::abs(ip - static_cast<double>(out[c].count)) > 0.01)
            fail(ErrorCode::CharacterMismatch, "multiplicity " + std::to_string(out[c].count) +
                                                   " disagrees with character inner product " +
                                                   std::to_string(ip.real()));
    }
    return out;
}

std::vector<ClassCount> multiplicities(const Representation &rho) { return multiplicities(rho, decompose(rho)); }

Decomposition align_to(const Representation &rho, const Decomposition &dec, const Representation &ref_rep,
                       const Decomposition &ref_dec) {
    std::vector<std::size_t> ref_first;  // first block of each reference label
    std::size_t max_label = 0;
    for (std::size_t b = 0; b < ref_dec.blocks.size(); ++b) {
        max_label = std::max(max_label, ref_dec.blocks[b].label + 1);
        bool seen = false;
        for (auto f : ref_first) seen = seen || ref_dec.blocks[f].label == ref_dec.blocks[b].label;
        if (!seen) ref_first.push_back(b);
    }
    std::vector<std::vector<Matrix>> ref_images;
    for (auto f : ref_first) ref_images.push_back(block_representation(ref_rep, ref_dec, f).images);

    Decomposition out = dec;
    std::vector<std::pair<std::size_t, std::size_t>> fresh;  // own label -> new label
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        const auto &blk = dec.blocks[b];
        const auto images = block_representation(rho, dec, b).images;
        std::size_t match = ref_first.size();
        for (std::size_t r = 0; r < ref_first.size(); ++r)
            if (same_character(ref_images[r], images)) {
                match = r;
                break;
            }
        if (match < ref_first.size()) {
            const Matrix q = intertwiner_from_images(ref_images[match], images);
            out.base_change.middleRows(blk.offset, blk.degree) = q * dec.base_change.middleRows(blk.offset, blk.degree);
            out.blocks[b].label = ref_dec.blocks[ref_first[match]].label;
        } else {
            auto it = std::find_if(fresh.begin(), fresh.end(), [&](const auto &p) { return p.first == blk.label; });
            if (it == fresh.end()) {
                fresh.emplace_back(blk.label, max_label + fresh.size());
                it = fresh.end() - 1;
            }
            out.blocks[b].label = it->second;
        }
    }
    return out;
}

Matrix complement_permutation(std::size_t k) {
    const std::size_t m = std::size_t{1} << k;
    std::vector<std::size_t> perm(2 * m);
    for (std::size_t x = 0; x < m; ++x) {
        perm[2 * x] = 2 * x;
        perm[2 * x + 1] = 2 * ((~x) & (m - 1)) + 1;
    }
    return permutation_matrix(perm);
}

Matrix wh_z_matrix(std::size_t m) {
    const Matrix t = clock_matrix(m);
    std::vector<Matrix> blocks;
    for (std::size_t j = 0; j < m; ++j) blocks.push_back(unitary_power(t, -static_cast<long long>(j)));
    return direct_sum(blocks);
}

FamilyBases family_bases(const FamilySpec &spec) {
    FamilyBases out;
    switch (spec.family) {
        case Family::Cyclic: {
            if (spec.n == 0 || spec.d == 0 || spec.d > spec.n)
                fail(ErrorCode::UnsupportedParameter, "cyclic family needs 1 <= d <= n");
            out.u = identity(spec.d);
            out.w = fourier(spec.n);
            const auto fam = cyclic_povm(spec.n, spec.d);
            const auto mon = derive_monomial(fam.phi, fam.povm).representation();
            out.blueprint = decomposition_from_base_change(mon, out.w).blocks;
            break;
        }
        case Family::Dihedral: {
            if (spec.m < 4 || !is_power_of_two(spec.m))
                fail(ErrorCode::UnsupportedParameter, "dihedral family needs m = 2^k >= 4");
            std::size_t k = 0;
            while ((std::size_t{1} << k) < spec.m) ++k;
            out.u = identity(2);
            out.w = complement_permutation(k) * kron(identity(2), fourier(spec.m).adjoint());
            const double a = 1.0 / std::sqrt(2.0 * static_cast<double>(spec.m));
            const auto fam = dihedral_povm(spec.m, cplx(0.6 * a * std::sqrt(2.0), 0.0), cplx(0.8 * a * std::sqrt(2.0), 0.0));
            const auto mon = derive_monomial(fam.phi, fam.povm).representation();
            out.blueprint = decomposition_from_base_change(mon, out.w).blocks;
            break;
        }
        case Family::WeylHeisenberg: {
            if (spec.m < 2 || !is_power_of_two(spec.m))
                fail(ErrorCode::UnsupportedParameter, "Weyl-Heisenberg family needs m = 2^k >= 2");
            out.u = identity(spec.m);
            const Matrix f = fourier(spec.m);
            out.w = wh_z_matrix(spec.m).adjoint() * kron(f.adjoint(), f);
            const auto fam = wh_povm(spec.m, wh_symmetric_vector(spec.m, cplx(0.5, 0.0)));
            const auto mon = derive_monomial(fam.phi, fam.povm).representation();
            out.blueprint = decomposition_from_base_change(mon, out.w).blocks;
            break;
        }
    }
    return out;
}

}  // namespace covneu
