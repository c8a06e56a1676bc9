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
#include <string>
#include <string_view>
#include <vector>

#include "covneu/linalg.hpp"

// Wires are numbered from the top: wire 0 is the most significant qubit of
// the basis index. Gates apply left to right.
namespace covneu {

enum class GateKind {
    H,       // Hadamard
    Phase,   // diag(1, e^{i theta})
    U2,      // arbitrary 2x2 unitary
    CX,      // controlled X
    CPhase,  // controlled diag(1, e^{i theta})
    CU,      // unitary on target wires under optional controls
    Swap,    // exchanges two wires
    Perm,    // basis permutation of the whole register
    CDiag,   // controlled product of phase gates, one angle per target
    QFT,     // F_{2^k} on a contiguous wire range, bit reversal included
};

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<unsigned> targets;
    std::vector<unsigned> controls;
    std::vector<bool> control_values;  // one per control; true means |1>
    Matrix matrix;                     // U2 and CU, 2^t x 2^t on targets
    std::vector<double> angles;        // Phase, CPhase (one), CDiag (per target)
    std::vector<std::size_t> perm;     // Perm: |i> -> |perm[i]>
    bool inverse = false;              // QFT

    static Gate h(unsigned w);
    static Gate phase(unsigned w, double theta);
    static Gate u2(unsigned w, const Matrix &m);
    static Gate cx(unsigned c, unsigned t);
    static Gate cphase(unsigned c, unsigned t, double theta);
    static Gate cu(std::vector<unsigned> controls, std::vector<unsigned> targets, const Matrix &m,
                   std::vector<bool> control_values = {});
    static Gate swap(unsigned a, unsigned b);
    static Gate permutation(std::vector<std::size_t> perm);
    static Gate cdiag(unsigned c, std::vector<unsigned> targets, std::vector<double> angles);
    static Gate qft(unsigned lo, unsigned hi, bool inverse = false);
};

struct Circuit {
    std::size_t num_qubits = 0;
    std::vector<Gate> gates;

    explicit Circuit(std::size_t q = 0) : num_qubits(q) {}
    Circuit &add(Gate g);
    Circuit &append(const Circuit &other);
    std::size_t dim() const { return std::size_t{1} << num_qubits; }
    /// Throws WireOutOfRange for bad wires, InvalidArgument for malformed
    /// payloads (wrong matrix size, non-unitary matrix, repeated wire).
    void validate() const;
};

/// Dense matrix of one gate on `num_qubits` wires, built by direct index
/// arithmetic (independent of the simulation kernels).
Matrix gate_matrix(const Gate &g, std::size_t num_qubits);
/// Product of gate matrices in application order.
Matrix expand(const Circuit &c);

/// Elementary gates of a QFT on wires lo..hi: per wire a Hadamard followed
/// by controlled phases, then the bit-reversal swaps. The inverse reverses
/// the list and negates the angles.
std::vector<Gate> qft_gates(unsigned lo, unsigned hi, bool inverse);
/// Replaces QFT macros by their elementary gates.
Circuit lower(const Circuit &c);
/// QFT blocks count as their lowering; CDIAG counts one per phase; every
/// other gate counts one.
std::size_t elementary_gate_count(const Circuit &c);

/// Statevector evolution without forming the dense matrix. Throws
/// DimensionMismatch for a wrong length and NotNormalized unless |state| = 1.
Vector simulate(const Circuit &c, const Vector &state);
/// Same evolution with the single-threaded reference kernels.
Vector simulate_serial(const Circuit &c, const Vector &state);

/// Exact outcome distribution of the circuit applied to rho + 0.
/// Throws DimensionMismatch if rho does not fit the register, InvalidState
/// for an invalid density matrix.
std::vector<double> outcome_probabilities(const Circuit &c, const Matrix &rho);
/// Shot counts drawn from outcome_probabilities. Shot s uses a generator
/// seeded with splitmix64(seed) ^ s, so counts depend only on (circuit, rho, shots, seed).
std::vector<std::uint64_t> sample(const Circuit &c, const Matrix &rho, std::uint64_t shots, std::uint64_t seed);

/// F_n^dagger on k = log2 n wires as elementary gates. Throws
/// UnsupportedParameter unless n is a power of two and d <= n.
Circuit build_cyclic_circuit(std::size_t n, std::size_t d);

/// 1 + k wires: A^dagger on wire 0, the complement permutation as k CX
/// gates controlled by wire k, then F_m on wires 1..k. The input state
/// lives on wire k.
Circuit build_dihedral_circuit(std::size_t m, cplx alpha, cplx beta);
/// A = sqrt(m) [[alpha, beta], [conj beta, -conj alpha]].
Matrix dihedral_a(std::size_t m, cplx alpha, cplx beta);

struct AFactor {
    Matrix a;         // m x m unitary whose first row is (sqrt(m) v) F_m^dagger
    Circuit circuit;  // k wires, expands to a^dagger
};

/// B_j = (1 / sqrt(1 + |alpha|^{2j})) [[1, alpha^j], [conj(alpha)^j, -1]].
Matrix wh_b(cplx alpha, std::size_t j);
/// Basis permutation J: |i> -> |2i> for i < m/2, |m-i> -> |2i-1> for 1 <= i <= m/2.
Matrix wh_j(std::size_t m);
/// A = J^dagger (B_{m/4} (x) ... (x) B_1 (x) B_0) J F_m^dagger for the
/// symmetric fiducial vector. Throws UnsupportedParameter unless m = 2^k >= 2.
AFactor build_A_wh(cplx alpha, std::size_t m);

/// 2k wires: A^dagger on the first register, Z as k controlled diagonals,
/// then F_m on the first register and F_m^dagger on the second.
/// Throws NotNormalized unless sum |v_i|^2 = 1/m.
Circuit build_wh_circuit(std::size_t m, const Vector &v);
Circuit build_wh_circuit(std::size_t m, cplx alpha);
/// The controlled-diagonal stage alone; expands to I + T^{m-1} + ... + T.
Circuit wh_z_stage(std::size_t m);

/// One CU gate carrying pad_to_qubits(u).
Circuit circuit_from_unitary(const Matrix &u);

/// Native text format (see README).
std::string to_text(const Circuit &c);
/// Throws ParseError with the offending line number.
Circuit parse_circuit(std::string_view text);
/// OpenQASM 2 export. QFT blocks are lowered; CU and PERM gates have no
/// qelib1 counterpart and are emitted as comments.
std::string to_qasm(const Circuit &c);

struct U3Angles {
    double theta = 0.0, phi = 0.0, lambda = 0.0, global = 0.0;
};
/// u = e^{i global} u3(theta, phi, lambda).
U3Angles zyz_decompose(const Matrix &u);
Matrix u3_matrix(double theta, double phi, double lambda);

}  // namespace covneu
