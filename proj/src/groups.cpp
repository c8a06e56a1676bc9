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

#include "covneu/groups.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "covneu/error.hpp"
#include "covneu/tolerance.hpp"

namespace covneu {

namespace {

// Entries are bucketed at 6 decimal digits; membership is then confirmed
// with the group tolerance.
constexpr double kQuantum = 1e6;

std::size_t hash_key(const std::vector<std::int64_t> &key) {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : key) {
        h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace

std::vector<std::int64_t> MatrixGroup::bucket_key(const Matrix &m) const {
    std::vector<std::int64_t> key;
    key.reserve(static_cast<std::size_t>(2 * m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            key.push_back(std::llround(m(i, j).real() * kQuantum));
            key.push_back(std::llround(m(i, j).imag() * kQuantum));
        }
    return key;
}

void MatrixGroup::index_element(std::size_t i) {
    buckets_[hash_key(bucket_key(elements_[i]))].push_back(i);
}

std::optional<std::size_t> MatrixGroup::find(const Matrix &m) const {
    if (static_cast<std::size_t>(m.rows()) != dim_ || static_cast<std::size_t>(m.cols()) != dim_)
        return std::nullopt;
    const Matrix probe = phase_quotient_ ? canonical_phase(m, tolerances().group) : m;
    auto it = buckets_.find(hash_key(bucket_key(probe)));
    if (it == buckets_.end()) return std::nullopt;
    for (auto idx : it->second)
        if (max_abs(elements_[idx] - probe) <= tolerances().group) return idx;
    return std::nullopt;
}

void MatrixGroup::build_inverses() {
    const std::size_t n = order();
    inverses_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (multiply(a, b) == 0) {
                inverses_[a] = b;
                break;
            }
}

std::size_t MatrixGroup::element_order(std::size_t a) const {
    std::size_t k = 1;
    std::size_t x = a;
    while (x != 0) {
        x = multiply(x, a);
        ++k;
    }
    return k;
}

MatrixGroup MatrixGroup::generate(std::span<const Matrix> generators, std::size_t max_order,
                                  bool phase_quotient) {
    if (generators.empty()) fail(ErrorCode::InvalidArgument, "generate_group needs at least one generator");
    const Eigen::Index dim = generators[0].rows();
    for (const auto &g : generators) {
        if (g.rows() != dim || g.cols() != dim)
            fail(ErrorCode::NonUnitaryGenerator, "generators must be square and of equal size");
        if (!is_unitary(g)) fail(ErrorCode::NonUnitaryGenerator, "generator is not unitary");
    }

    MatrixGroup group;
    group.dim_ = static_cast<std::size_t>(dim);
    group.phase_quotient_ = phase_quotient;
    group.elements_.push_back(Matrix::Identity(dim, dim));
    group.words_.emplace_back();
    group.index_element(0);

    const double tol = tolerances().group;
    for (std::size_t i = 0; i < group.elements_.size(); ++i) {
        for (std::size_t k = 0; k < generators.size(); ++k) {
            Matrix product = group.elements_[i] * generators[k];
            if (phase_quotient) product = canonical_phase(product, tol);
            if (group.find(product)) continue;
            if (group.elements_.size() >= max_order)
                fail(ErrorCode::OrderExceeded, "closure exceeds max_order " + std::to_string(max_order));
            Word w = group.words_[i];
            w.push_back(k);
            group.elements_.push_back(std::move(product));
            group.words_.push_back(std::move(w));
            group.index_element(group.elements_.size() - 1);
        }
    }

    for (const auto &g : generators) group.generators_.push_back(*group.find(g));

    const std::size_t n = group.order();
    group.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto idx = group.find(group.elements_[a] * group.elements_[b]);
            if (!idx) fail(ErrorCode::InvalidArgument, "group closure is numerically inconsistent");
            group.table_[a * n + b] = *idx;
        }
    group.build_inverses();
    return group;
}

MatrixGroup MatrixGroup::from_table(std::vector<Matrix> elements, std::vector<std::size_t> table,
                                    std::vector<std::size_t> generators) {
    const std::size_t n = elements.size();
    if (n == 0 || table.size() != n * n) fail(ErrorCode::InvalidArgument, "table size mismatch");
    MatrixGroup group;
    group.dim_ = static_cast<std::size_t>(elements[0].rows());
    group.elements_ = std::move(elements);
    group.table_ = std::move(table);
    group.generators_ = std::move(generators);
    for (std::size_t i = 0; i < n; ++i) group.index_element(i);

    // Words by breadth-first search over right multiplication by generators.
    group.words_.assign(n, Word{});
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        for (std::size_t k = 0; k < group.generators_.size(); ++k) {
            const std::size_t y = group.multiply(x, group.generators_[k]);
            if (seen[y]) continue;
            seen[y] = true;
            group.words_[y] = group.words_[x];
            group.words_[y].push_back(k);
            queue.push_back(y);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i]) fail(ErrorCode::InvalidArgument, "generators do not generate the group");
    group.build_inverses();
    return group;
}

double homomorphism_defect(const Representation &rep) {
    const auto &g = *rep.group;
    double worst = 0.0;
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            worst = std::max(worst, max_abs(rep.images[a] * rep.images[b] - rep.images[g.multiply(a, b)]));
    return worst;
}

double unitarity_defect(const Representation &rep) {
    double worst = 0.0;
    for (const auto &img : rep.images) worst = std::max(worst, unitary_deviation(img));
    return worst;
}

std::vector<cplx> character(const Representation &rep) {
    std::vector<cplx> chi;
    chi.reserve(rep.images.size());
    for (const auto &img : rep.images) chi.push_back(img.trace());
    return chi;
}

ProjectiveRep make_projective(GroupPtr group, std::vector<Matrix> images) {
    const std::size_t n = group->order();
    if (images.size() != n) fail(ErrorCode::InvalidArgument, "one image per group element required");
    const double tol = tolerances().group;
    ProjectiveRep p{group, std::move(images), std::vector<cplx>(n * n)};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const Matrix prod = p.images[a] * p.images[b];
            const Matrix &target = p.images[group->multiply(a, b)];
            cplx gamma{};
            bool found = false;
            for (Eigen::Index i = 0; i < target.rows() && !found; ++i)
                for (Eigen::Index j = 0; j < target.cols() && !found; ++j)
                    if (std::abs(target(i, j)) > tol) {
                        gamma = prod(i, j) / target(i, j);
                        found = true;
                    }
            if (!found || max_abs(prod - gamma * target) > tol)
                fail(ErrorCode::InvalidArgument, "images are not a projective representation");
            p.factor_system[a * n + b] = gamma;
        }
    return p;
}

std::size_t CentralExtension::index_of(std::size_t g, std::size_t h) const {
    return h * (group->order() / phases.size()) + g;
}

CentralExtension central_extension(const ProjectiveRep &p, std::size_t max_phase_order) {
    const auto &base = *p.group;
    const std::size_t n = base.order();
    const double tol = tolerances().group;

    std::vector<cplx> phases{cplx{1.0, 0.0}};
    auto find_phase = [&](cplx z) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < phases.size(); ++i)
            if (std::abs(phases[i] - z) <= tol) return i;
        return std::nullopt;
    };
    auto add_phase = [&](cplx z) {
        if (std::abs(std::abs(z) - 1.0) > tol) fail(ErrorCode::InvalidArgument, "factor system is not unimodular");
        if (find_phase(z)) return;
        if (phases.size() >= max_phase_order)
            fail(ErrorCode::InfinitePhaseGroup,
                 "phase group exceeds " + std::to_string(max_phase_order) + " elements");
        phases.push_back(z / std::abs(z));
    };
    for (auto gamma : p.factor_system) add_phase(gamma);
    for (std::size_t i = 0; i < phases.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) add_phase(phases[i] * phases[j]);

    const std::size_t h_order = phases.size();
    const std::size_t total = n * h_order;
    std::vector<std::size_t> table(total * total);
    for (std::size_t x = 0; x < total; ++x) {
        const std::size_t g = x % n, h = x / n;
        for (std::size_t y = 0; y < total; ++y) {
            const std::size_t g2 = y % n, h2 = y / n;
            auto idx = find_phase(p.gamma(g, g2) * phases[h] * phases[h2]);
            if (!idx) fail(ErrorCode::InfinitePhaseGroup, "phase group not closed");
            table[x * total + y] = *idx * n + base.multiply(g, g2);
        }
    }

    CentralExtension ext;
    ext.phases = phases;
    std::vector<Matrix> images(total);
    for (std::size_t x = 0; x < total; ++x) {
        images[x] = phases[x / n] * p.images[x % n];
        ext.base.push_back(x % n);
        ext.phase_index.push_back(x / n);
    }

    // The images h phi(g) realize the extension faithfully unless phi itself
    // collapses elements; fall back to the regular permutation realization.
    bool faithful = true;
    for (std::size_t a = 0; a < total && faithful; ++a)
        for (std::size_t b = a + 1; b < total && faithful; ++b)
            if (max_abs(images[a] - images[b]) <= tol) faithful = false;
    std::vector<Matrix> realization;
    if (faithful) {
        realization = images;
    } else {
        realization.reserve(total);
        for (std::size_t x = 0; x < total; ++x) {
            Matrix perm = Matrix::Zero(total, total);
            for (std::size_t y = 0; y < total; ++y) perm(table[x * total + y], y) = 1.0;
            realization.push_back(std::move(perm));
        }
    }

    std::vector<std::size_t> gens(base.generators().begin(), base.generators().end());
    // Add central phase elements (e, h) until the generated set is everything.
    for (std::size_t h = 1; h < h_order; ++h) gens.push_back(h * n);
    auto group = std::make_shared<const MatrixGroup>(
        MatrixGroup::from_table(std::move(realization), std::move(table), std::move(gens)));
    ext.group = group;
    ext.rep = Representation{group, std::move(images)};
    return ext;
}

Representation regular_representation(const GroupPtr &group) {
    const std::size_t n = group->order();
    Representation rep{group, {}};
    rep.images.reserve(n);
    for (std::size_t g = 0; g < n; ++g) {
        Matrix m = Matrix::Zero(n, n);
        for (std::size_t h = 0; h < n; ++h) m(group->multiply(g, h), h) = 1.0;
        rep.images.push_back(std::move(m));
    }
    return rep;
}

Representation natural_representation(const GroupPtr &group) {
    return Representation{group, std::vector<Matrix>(group->elements().begin(), group->elements().end())};
}

std::size_t abelian_index(std::span<const std::size_t> orders, std::span<const std::size_t> digits) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + digits[i] % orders[i];
    return idx;
}

MatrixGroup abelian_group(std::span<const std::size_t> orders) {
    std::size_t total = 1;
    for (auto o : orders) {
        if (o == 0) fail(ErrorCode::InvalidArgument, "cyclic factor of order 0");
        total *= o;
    }
    const std::size_t k = orders.size();
    auto digits_of = [&](std::size_t idx) {
        std::vector<std::size_t> d(k);
        for (std::size_t i = k; i-- > 0;) {
            d[i] = idx % orders[i];
            idx /= orders[i];
        }
        return d;
    };
    std::vector<Matrix> elements;
    elements.reserve(total);
    for (std::size_t x = 0; x < total; ++x) {
        auto d = digits_of(x);
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < k; ++i)
            m(i, i) = root_of_unity(static_cast<long long>(orders[i]), static_cast<long long>(d[i]));
        elements.push_back(std::move(m));
    }
    std::vector<std::size_t> table(total * total);
    for (std::size_t x = 0; x < total; ++x) {
        auto dx = digits_of(x);
        for (std::size_t y = 0; y < total; ++y) {
            auto dy = digits_of(y);
            for (std::size_t i = 0; i < k; ++i) dy[i] = (dx[i] + dy[i]) % orders[i];
            table[x * total + y] = abelian_index(orders, dy);
        }
    }
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> unit(k, 0);
        unit[i] = 1 % orders[i];
        gens.push_back(abelian_index(orders, unit));
    }
    return MatrixGroup::from_table(std::move(elements), std::move(table), std::move(gens));
}

MatrixGroup dihedral_group(std::size_t m) {
    if (m < 2) fail(ErrorCode::UnsupportedParameter, "dihedral group needs m >= 2");
    Matrix r = Matrix::Zero(2, 2);
    r(0, 0) = root_of_unity(static_cast<long long>(m), 1);
    r(1, 1) = root_of_unity(static_cast<long long>(m), -1);
    const std::vector<Matrix> gens{r, pauli_x()};
    return MatrixGroup::generate(gens, 2 * m, false);
}

MatrixGroup weyl_heisenberg_group(std::size_t m, bool phase_quotient) {
    if (m < 2) fail(ErrorCode::UnsupportedParameter, "Weyl-Heisenberg group needs m >= 2");
    const std::vector<Matrix> gens{shift_matrix(m), clock_matrix(m)};
    return MatrixGroup::generate(gens, m * m * m, phase_quotient);
}

Representation cyclic_diagonal_representation(std::size_t n, std::size_t d) {
    if (n == 0 || d == 0) fail(ErrorCode::UnsupportedParameter, "cyclic representation needs n, d >= 1");
    const std::vector<std::size_t> orders{n};
    auto group = std::make_shared<const MatrixGroup>(abelian_group(orders));
    Representation rep{group, {}};
    for (std::size_t k = 0; k < n; ++k) {
        Matrix m = Matrix::Zero(d, d);
        for (std::size_t j = 0; j < d; ++j)
            m(j, j) = root_of_unity(static_cast<long long>(n), static_cast<long long>((j * k) % n));
        rep.images.push_back(std::move(m));
    }
    return rep;
}

Representation direct_sum(const Representation &a, const Representation &b) {
    Representation out{a.group, {}};
    out.images.reserve(a.images.size());
    for (std::size_t g = 0; g < a.images.size(); ++g) out.images.push_back(direct_sum(a.images[g], b.images[g]));
    return out;
}

Representation conjugate(const Representation &rep, const Matrix &u) {
    Representation out{rep.group, {}};
    out.images.reserve(rep.images.size());
    for (const auto &img : rep.images) out.images.push_back(u * img * u.adjoint());
    return out;
}

}  // namespace covneu
