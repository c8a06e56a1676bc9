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

#include "covneu/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace covneu::kernels {

namespace {

// Below this many amplitudes thread start-up costs more than the loop.
constexpr std::int64_t kParallelThreshold = 1 << 12;

inline bool controls_hold(std::uint64_t i, ControlMask ctrl) { return (i & ctrl.mask) == ctrl.value; }

inline std::uint64_t insert_zero(std::uint64_t k, unsigned bit) {
    const std::uint64_t low = k & ((std::uint64_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

std::uint64_t local_offset(std::uint64_t local, std::span<const unsigned> bits) {
    const std::size_t t = bits.size();
    std::uint64_t off = 0;
    for (std::size_t j = 0; j < t; ++j)
        if ((local >> (t - 1 - j)) & 1U) off |= std::uint64_t{1} << bits[j];
    return off;
}

}  // namespace

namespace serial {

void apply_single(std::span<cplx> state, unsigned bit, const cplx *m, ControlMask ctrl) {
    const std::uint64_t stride = std::uint64_t{1} << bit;
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if ((i & stride) || !controls_hold(i, ctrl)) continue;
        const cplx a0 = state[i], a1 = state[i | stride];
        state[i] = m[0] * a0 + m[1] * a1;
        state[i | stride] = m[2] * a0 + m[3] * a1;
    }
}

void apply_matrix(std::span<cplx> state, std::span<const unsigned> bits, const Matrix &m, ControlMask ctrl) {
    const std::size_t dim = std::size_t{1} << bits.size();
    std::uint64_t target_mask = 0;
    for (auto b : bits) target_mask |= std::uint64_t{1} << b;
    std::vector<std::uint64_t> offsets(dim);
    for (std::size_t l = 0; l < dim; ++l) offsets[l] = local_offset(l, bits);
    std::vector<cplx> in(dim);
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if ((i & target_mask) || !controls_hold(i, ctrl)) continue;
        for (std::size_t l = 0; l < dim; ++l) in[l] = state[i | offsets[l]];
        for (std::size_t r = 0; r < dim; ++r) {
            cplx acc{};
            for (std::size_t c = 0; c < dim; ++c) acc += m(r, c) * in[c];
            state[i | offsets[r]] = acc;
        }
    }
}

void apply_phases(std::span<cplx> state, std::span<const unsigned> bits, std::span<const double> phases,
                  ControlMask ctrl) {
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if (!controls_hold(i, ctrl)) continue;
        double angle = 0.0;
        for (std::size_t t = 0; t < bits.size(); ++t)
            if ((i >> bits[t]) & 1U) angle += phases[t];
        if (angle != 0.0) state[i] *= std::polar(1.0, angle);
    }
}

void apply_permutation(std::span<const cplx> in, std::span<cplx> out, std::span<const std::size_t> perm) {
    for (std::size_t i = 0; i < in.size(); ++i) out[perm[i]] = in[i];
}

void accumulate_probabilities(std::span<const cplx> state, double weight, std::span<double> probs) {
    for (std::size_t i = 0; i < state.size(); ++i) probs[i] += weight * std::norm(state[i]);
}

}  // namespace serial

namespace omp {

void apply_single(std::span<cplx> state, unsigned bit, const cplx *m, ControlMask ctrl) {
    const std::uint64_t stride = std::uint64_t{1} << bit;
    const auto half = static_cast<std::int64_t>(state.size() / 2);
    const cplx m0 = m[0], m1 = m[1], m2 = m[2], m3 = m[3];
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::uint64_t i = insert_zero(static_cast<std::uint64_t>(k), bit);
        if (!controls_hold(i, ctrl)) continue;
        const cplx a0 = state[i], a1 = state[i | stride];
        state[i] = m0 * a0 + m1 * a1;
        state[i | stride] = m2 * a0 + m3 * a1;
    }
}

void apply_matrix(std::span<cplx> state, std::span<const unsigned> bits, const Matrix &m, ControlMask ctrl) {
    const std::size_t t = bits.size();
    const std::size_t dim = std::size_t{1} << t;
    std::vector<unsigned> sorted(bits.begin(), bits.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint64_t> offsets(dim);
    for (std::size_t l = 0; l < dim; ++l) offsets[l] = local_offset(l, bits);
    const auto groups = static_cast<std::int64_t>(state.size() >> t);
#pragma omp parallel if (groups >= kParallelThreshold)
    {
        std::vector<cplx> in(dim);
#pragma omp for schedule(static)
        for (std::int64_t k = 0; k < groups; ++k) {
            std::uint64_t i = static_cast<std::uint64_t>(k);
            for (auto b : sorted) i = insert_zero(i, b);
            if (!controls_hold(i, ctrl)) continue;
            for (std::size_t l = 0; l < dim; ++l) in[l] = state[i | offsets[l]];
            for (std::size_t r = 0; r < dim; ++r) {
                cplx acc{};
                for (std::size_t c = 0; c < dim; ++c) acc += m(r, c) * in[c];
                state[i | offsets[r]] = acc;
            }
        }
    }
}

void apply_phases(std::span<cplx> state, std::span<const unsigned> bits, std::span<const double> phases,
                  ControlMask ctrl) {
    const auto n = static_cast<std::int64_t>(state.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::uint64_t>(k);
        if (!controls_hold(i, ctrl)) continue;
        double angle = 0.0;
        for (std::size_t t = 0; t < bits.size(); ++t)
            if ((i >> bits[t]) & 1U) angle += phases[t];
        if (angle != 0.0) state[i] *= std::polar(1.0, angle);
    }
}

void apply_permutation(std::span<const cplx> in, std::span<cplx> out, std::span<const std::size_t> perm) {
    const auto n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) out[perm[i]] = in[i];
}

void accumulate_probabilities(std::span<const cplx> state, double weight, std::span<double> probs) {
    const auto n = static_cast<std::int64_t>(state.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::int64_t i = 0; i < n; ++i) probs[i] += weight * std::norm(state[i]);
}

}  // namespace omp

}  // namespace covneu::kernels
