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
#include <span>

#include "covneu/linalg.hpp"

// Statevector kernels. Bit positions count from the least significant bit;
// callers translate wires (wire 0 = most significant) to bit positions.
// Every kernel exists twice with identical semantics: `serial` is the
// reference, `omp` splits the amplitude loop across threads.
namespace covneu::kernels {

/// Amplitudes whose index satisfies (i & mask) == value are touched.
struct ControlMask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
};

namespace serial {

/// 2x2 matrix m (row-major) on bit `bit`.
void apply_single(std::span<cplx> state, unsigned bit, const cplx *m, ControlMask ctrl);
/// 2^t x 2^t matrix on the listed bits; bits[0] is the most significant
/// bit of the local index.
void apply_matrix(std::span<cplx> state, std::span<const unsigned> bits, const Matrix &m, ControlMask ctrl);
/// Multiplies amplitude i by exp(i * sum of phases[t] over set bits[t]).
void apply_phases(std::span<cplx> state, std::span<const unsigned> bits, std::span<const double> phases,
                  ControlMask ctrl);
/// out[perm[i]] = in[i].
void apply_permutation(std::span<const cplx> in, std::span<cplx> out, std::span<const std::size_t> perm);
/// Adds weight * |amp_i|^2 to probs[i].
void accumulate_probabilities(std::span<const cplx> state, double weight, std::span<double> probs);

}  // namespace serial

namespace omp {

void apply_single(std::span<cplx> state, unsigned bit, const cplx *m, ControlMask ctrl);
void apply_matrix(std::span<cplx> state, std::span<const unsigned> bits, const Matrix &m, ControlMask ctrl);
void apply_phases(std::span<cplx> state, std::span<const unsigned> bits, std::span<const double> phases,
                  ControlMask ctrl);
void apply_permutation(std::span<const cplx> in, std::span<cplx> out, std::span<const std::size_t> perm);
void accumulate_probabilities(std::span<const cplx> state, double weight, std::span<double> probs);

}  // namespace omp

}  // namespace covneu::kernels
