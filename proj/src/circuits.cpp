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

#include "covneu/circuits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "covneu/error.hpp"
#include "covneu/kernels.hpp"
#include "covneu/synth.hpp"
#include "covneu/tolerance.hpp"

namespace covneu {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

Matrix hadamard() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Matrix phase_matrix(double theta) {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = std::polar(1.0, theta);
    return m;
}

Matrix swap_matrix() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return m;
}

Matrix diagonal_from_angles(const std::vector<double> &angles) {
    const std::size_t t = angles.size();
    const std::size_t dim = std::size_t{1} << t;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t l = 0; l < dim; ++l) {
        double a = 0.0;
        for (std::size_t j = 0; j < t; ++j)
            if ((l >> (t - 1 - j)) & 1U) a += angles[j];
        m(l, l) = std::polar(1.0, a);
    }
    return m;
}

std::vector<unsigned> wire_range(unsigned lo, unsigned hi) {
    std::vector<unsigned> w;
    for (unsigned i = lo; i <= hi; ++i) w.push_back(i);
    return w;
}

// Matrix acting on g.targets (targets[0] most significant); Perm has none.
Matrix local_matrix(const Gate &g) {
    switch (g.kind) {
        case GateKind::H: return hadamard();
        case GateKind::Phase:
        case GateKind::CPhase: return phase_matrix(g.angles.at(0));
        case GateKind::U2:
        case GateKind::CU: return g.matrix;
        case GateKind::CX: return pauli_x();
        case GateKind::Swap: return swap_matrix();
        case GateKind::CDiag: return diagonal_from_angles(g.angles);
        case GateKind::QFT: {
            const Matrix f = fourier(std::size_t{1} << g.targets.size());
            return g.inverse ? Matrix(f.adjoint()) : f;
        }
        case GateKind::Perm: break;
    }
    fail(ErrorCode::InvalidArgument, "gate has no local matrix");
}

unsigned bit_of(unsigned wire, std::size_t q) { return static_cast<unsigned>(q - 1 - wire); }

kernels::ControlMask control_mask(const Gate &g, std::size_t q) {
    kernels::ControlMask ctrl;
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
        const std::uint64_t b = std::uint64_t{1} << bit_of(g.controls[i], q);
        ctrl.mask |= b;
        if (g.control_values.empty() || g.control_values[i]) ctrl.value |= b;
    }
    return ctrl;
}

std::vector<unsigned> target_bits(const Gate &g, std::size_t q) {
    std::vector<unsigned> bits;
    for (auto w : g.targets) bits.push_back(bit_of(w, q));
    return bits;
}

struct SerialBackend {
    static void single(std::span<cplx> s, unsigned b, const cplx *m, kernels::ControlMask c) {
        kernels::serial::apply_single(s, b, m, c);
    }
    static void matrix(std::span<cplx> s, std::span<const unsigned> b, const Matrix &m, kernels::ControlMask c) {
        kernels::serial::apply_matrix(s, b, m, c);
    }
    static void phases(std::span<cplx> s, std::span<const unsigned> b, std::span<const double> p,
                       kernels::ControlMask c) {
        kernels::serial::apply_phases(s, b, p, c);
    }
    static void permute(std::span<const cplx> in, std::span<cplx> out, std::span<const std::size_t> p) {
        kernels::serial::apply_permutation(in, out, p);
    }
};

struct OmpBackend {
    static void single(std::span<cplx> s, unsigned b, const cplx *m, kernels::ControlMask c) {
        kernels::omp::apply_single(s, b, m, c);
    }
    static void matrix(std::span<cplx> s, std::span<const unsigned> b, const Matrix &m, kernels::ControlMask c) {
        kernels::omp::apply_matrix(s, b, m, c);
    }
    static void phases(std::span<cplx> s, std::span<const unsigned> b, std::span<const double> p,
                       kernels::ControlMask c) {
        kernels::omp::apply_phases(s, b, p, c);
    }
    static void permute(std::span<const cplx> in, std::span<cplx> out, std::span<const std::size_t> p) {
        kernels::omp::apply_permutation(in, out, p);
    }
};

template <class Backend>
void apply_gate(const Gate &g, std::size_t q, std::vector<cplx> &state, std::vector<cplx> &scratch) {
    const auto ctrl = control_mask(g, q);
    switch (g.kind) {
        case GateKind::H:
        case GateKind::Phase:
        case GateKind::U2:
        case GateKind::CX: {
            const Matrix m = local_matrix(g);
            const cplx flat[4] = {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
            Backend::single(state, bit_of(g.targets[0], q), flat, ctrl);
            return;
        }
        case GateKind::CPhase:
        case GateKind::CDiag: {
            const auto bits = target_bits(g, q);
            Backend::phases(state, bits, g.angles, ctrl);
            return;
        }
        case GateKind::CU:
        case GateKind::Swap: {
            const auto bits = target_bits(g, q);
            Backend::matrix(state, bits, local_matrix(g), ctrl);
            return;
        }
        case GateKind::Perm:
            scratch.assign(state.size(), cplx{});
            Backend::permute(state, scratch, g.perm);
            state.swap(scratch);
            return;
        case GateKind::QFT:
            for (const auto &e : qft_gates(g.targets.front(), g.targets.back(), g.inverse))
                apply_gate<Backend>(e, q, state, scratch);
            return;
    }
}

template <class Backend>
Vector run(const Circuit &c, const Vector &in) {
    c.validate();
    if (static_cast<std::size_t>(in.size()) != c.dim())
        fail(ErrorCode::DimensionMismatch, "state length " + std::to_string(in.size()) + " for " +
                                               std::to_string(c.num_qubits) + " qubits");
    if (std::abs(in.norm() - 1.0) > tolerances().povm) fail(ErrorCode::NotNormalized, "state is not unit norm");
    std::vector<cplx> state(in.data(), in.data() + in.size()), scratch;
    for (const auto &g : c.gates) apply_gate<Backend>(g, c.num_qubits, state, scratch);
    return Eigen::Map<Vector>(state.data(), static_cast<Eigen::Index>(state.size()));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void require_wire(unsigned w, std::size_t q) {
    if (w >= q) fail(ErrorCode::WireOutOfRange, "wire " + std::to_string(w) + " on " + std::to_string(q) + " qubits");
}

}  // namespace

Gate Gate::h(unsigned w) {
    Gate g;
    g.kind = GateKind::H;
    g.targets = {w};
    return g;
}

Gate Gate::phase(unsigned w, double theta) {
    Gate g;
    g.kind = GateKind::Phase;
    g.targets = {w};
    g.angles = {theta};
    return g;
}

Gate Gate::u2(unsigned w, const Matrix &m) {
    Gate g;
    g.kind = GateKind::U2;
    g.targets = {w};
    g.matrix = m;
    return g;
}

Gate Gate::cx(unsigned c, unsigned t) {
    Gate g;
    g.kind = GateKind::CX;
    g.targets = {t};
    g.controls = {c};
    g.control_values = {true};
    return g;
}

Gate Gate::cphase(unsigned c, unsigned t, double theta) {
    Gate g;
    g.kind = GateKind::CPhase;
    g.targets = {t};
    g.controls = {c};
    g.control_values = {true};
    g.angles = {theta};
    return g;
}

Gate Gate::cu(std::vector<unsigned> controls, std::vector<unsigned> targets, const Matrix &m,
              std::vector<bool> control_values) {
    Gate g;
    g.kind = GateKind::CU;
    if (control_values.empty()) control_values.assign(controls.size(), true);
    g.controls = std::move(controls);
    g.control_values = std::move(control_values);
    g.targets = std::move(targets);
    g.matrix = m;
    return g;
}

Gate Gate::swap(unsigned a, unsigned b) {
    Gate g;
    g.kind = GateKind::Swap;
    g.targets = {a, b};
    return g;
}

Gate Gate::permutation(std::vector<std::size_t> perm) {
    Gate g;
    g.kind = GateKind::Perm;
    g.perm = std::move(perm);
    return g;
}

Gate Gate::cdiag(unsigned c, std::vector<unsigned> targets, std::vector<double> angles) {
    Gate g;
    g.kind = GateKind::CDiag;
    g.controls = {c};
    g.control_values = {true};
    g.targets = std::move(targets);
    g.angles = std::move(angles);
    return g;
}

Gate Gate::qft(unsigned lo, unsigned hi, bool inverse) {
    Gate g;
    g.kind = GateKind::QFT;
    if (hi < lo) fail(ErrorCode::InvalidArgument, "QFT range is empty");
    g.targets = wire_range(lo, hi);
    g.inverse = inverse;
    return g;
}

Circuit &Circuit::add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits != num_qubits) fail(ErrorCode::DimensionMismatch, "appending circuits of different width");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    return *this;
}

void Circuit::validate() const {
    if (num_qubits == 0 || num_qubits > 30) fail(ErrorCode::InvalidArgument, "qubit count must be in 1..30");
    for (const auto &g : gates) {
        std::vector<unsigned> used;
        for (auto w : g.targets) require_wire(w, num_qubits), used.push_back(w);
        for (auto w : g.controls) require_wire(w, num_qubits), used.push_back(w);
        std::sort(used.begin(), used.end());
        if (std::adjacent_find(used.begin(), used.end()) != used.end())
            fail(ErrorCode::InvalidArgument, "gate uses a wire twice");
        if (!g.control_values.empty() && g.control_values.size() != g.controls.size())
            fail(ErrorCode::InvalidArgument, "control values do not match controls");
        switch (g.kind) {
            case GateKind::U2:
            case GateKind::CU: {
                const auto dim = Eigen::Index{1} << g.targets.size();
                if (g.targets.empty() || g.matrix.rows() != dim || g.matrix.cols() != dim)
                    fail(ErrorCode::InvalidArgument, "gate matrix does not match its target count");
                if (unitary_deviation(g.matrix) > tolerances().unitary)
                    fail(ErrorCode::InvalidArgument, "gate matrix is not unitary");
                break;
            }
            case GateKind::Phase:
            case GateKind::CPhase:
                if (g.angles.size() != 1) fail(ErrorCode::InvalidArgument, "phase gate needs one angle");
                break;
            case GateKind::CDiag:
                if (g.angles.size() != g.targets.size() || g.targets.empty())
                    fail(ErrorCode::InvalidArgument, "CDIAG needs one angle per target");
                break;
            case GateKind::Perm: {
                if (g.perm.size() != dim()) fail(ErrorCode::InvalidArgument, "permutation length differs from 2^q");
                std::vector<bool> seen(g.perm.size(), false);
                for (auto p : g.perm) {
                    if (p >= seen.size() || seen[p]) fail(ErrorCode::InvalidArgument, "PERM is not a bijection");
                    seen[p] = true;
                }
                break;
            }
            case GateKind::Swap:
                if (g.targets.size() != 2) fail(ErrorCode::InvalidArgument, "SWAP needs two wires");
                break;
            case GateKind::QFT:
                for (std::size_t i = 1; i < g.targets.size(); ++i)
                    if (g.targets[i] != g.targets[i - 1] + 1)
                        fail(ErrorCode::InvalidArgument, "QFT wires must be contiguous");
                break;
            default:
                if (g.targets.size() != 1) fail(ErrorCode::InvalidArgument, "single-target gate");
        }
    }
}

Matrix gate_matrix(const Gate &g, std::size_t q) {
    const std::size_t n = std::size_t{1} << q;
    Matrix out = Matrix::Zero(n, n);
    if (g.kind == GateKind::Perm) {
        for (std::size_t i = 0; i < n; ++i) out(g.perm[i], i) = 1.0;
        return out;
    }
    const Matrix local = local_matrix(g);
    const std::size_t t = g.targets.size();
    auto wire_set = [&](std::size_t index, unsigned w) { return (index >> (q - 1 - w)) & 1U; };
    for (std::size_t j = 0; j < n; ++j) {
        bool active = true;
        for (std::size_t i = 0; i < g.controls.size(); ++i) {
            const bool want = g.control_values.empty() || g.control_values[i];
            if (static_cast<bool>(wire_set(j, g.controls[i])) != want) active = false;
        }
        if (!active) {
            out(j, j) = 1.0;
            continue;
        }
        std::size_t lj = 0, base = j;
        for (std::size_t a = 0; a < t; ++a) {
            lj = (lj << 1) | wire_set(j, g.targets[a]);
            base &= ~(std::size_t{1} << (q - 1 - g.targets[a]));
        }
        for (std::size_t r = 0; r < (std::size_t{1} << t); ++r) {
            std::size_t row = base;
            for (std::size_t a = 0; a < t; ++a)
                if ((r >> (t - 1 - a)) & 1U) row |= std::size_t{1} << (q - 1 - g.targets[a]);
            out(row, j) = local(r, lj);
        }
    }
    return out;
}

Matrix expand(const Circuit &c) {
    c.validate();
    Matrix u = identity(c.dim());
    for (const auto &g : c.gates) u = gate_matrix(g, c.num_qubits) * u;
    return u;
}

std::vector<Gate> qft_gates(unsigned lo, unsigned hi, bool inverse) {
    std::vector<Gate> out;
    for (unsigned i = lo; i <= hi; ++i) {
        out.push_back(Gate::h(i));
        for (unsigned j = i + 1; j <= hi; ++j)
            out.push_back(Gate::cphase(j, i, 2.0 * kPi / std::ldexp(1.0, static_cast<int>(j - i + 1))));
    }
    const unsigned k = hi - lo + 1;
    for (unsigned s = 0; s < k / 2; ++s) out.push_back(Gate::swap(lo + s, hi - s));
    if (inverse) {
        std::reverse(out.begin(), out.end());
        for (auto &g : out)
            for (auto &a : g.angles) a = -a;
    }
    return out;
}

Circuit lower(const Circuit &c) {
    Circuit out(c.num_qubits);
    for (const auto &g : c.gates) {
        if (g.kind != GateKind::QFT) {
            out.add(g);
            continue;
        }
        for (auto &e : qft_gates(g.targets.front(), g.targets.back(), g.inverse)) out.add(std::move(e));
    }
    return out;
}

std::size_t elementary_gate_count(const Circuit &c) {
    std::size_t count = 0;
    for (const auto &g : c.gates) {
        if (g.kind == GateKind::QFT) {
            const std::size_t k = g.targets.size();
            count += k * (k + 1) / 2 + k / 2;
        } else if (g.kind == GateKind::CDiag) {
            count += g.angles.size();
        } else {
            ++count;
        }
    }
    return count;
}

Vector simulate(const Circuit &c, const Vector &state) { return run<OmpBackend>(c, state); }

Vector simulate_serial(const Circuit &c, const Vector &state) { return run<SerialBackend>(c, state); }

std::vector<double> outcome_probabilities(const Circuit &c, const Matrix &rho) {
    const auto d = static_cast<std::size_t>(rho.rows());
    if (d > c.dim() || rho.cols() != rho.rows())
        fail(ErrorCode::DimensionMismatch, "state of dimension " + std::to_string(d) + " does not fit " +
                                               std::to_string(c.num_qubits) + " qubits");
    check_density_matrix(rho, d);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
    std::vector<double> probs(c.dim(), 0.0);
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        const double w = eig.eigenvalues()(i);
        if (w <= 0.0) continue;
        Vector psi = Vector::Zero(static_cast<Eigen::Index>(c.dim()));
        psi.head(static_cast<Eigen::Index>(d)) = eig.eigenvectors().col(i);
        const Vector out = simulate(c, psi);
        kernels::omp::accumulate_probabilities(std::span<const cplx>(out.data(), static_cast<std::size_t>(out.size())),
                                               w, probs);
    }
    return probs;
}

std::vector<std::uint64_t> sample(const Circuit &c, const Matrix &rho, std::uint64_t shots, std::uint64_t seed) {
    const auto probs = outcome_probabilities(c, rho);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) cdf[i] = acc += std::max(probs[i], 0.0);
    const double total = acc;
    std::vector<std::uint64_t> counts(probs.size(), 0);
    const std::uint64_t stream = splitmix64(seed);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(probs.size(), 0);
#pragma omp for schedule(static)
        for (std::int64_t s = 0; s < static_cast<std::int64_t>(shots); ++s) {
            const std::uint64_t bits = splitmix64(stream ^ static_cast<std::uint64_t>(s));
            const double u = static_cast<double>(bits >> 11) * 0x1.0p-53 * total;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;
            ++local[static_cast<std::size_t>(it - cdf.begin())];
        }
#pragma omp critical
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
    }
    return counts;
}

Circuit build_cyclic_circuit(std::size_t n, std::size_t d) {
    if (!is_power_of_two(n) || n < 2) fail(ErrorCode::UnsupportedParameter, "cyclic circuit needs n = 2^k >= 2");
    if (d == 0 || d > n) fail(ErrorCode::UnsupportedParameter, "cyclic circuit needs 1 <= d <= n");
    const auto k = static_cast<unsigned>(log2_exact(n));
    Circuit c(k);
    for (auto &g : qft_gates(0, k - 1, true)) c.add(std::move(g));
    return c;
}

Matrix dihedral_a(std::size_t m, cplx alpha, cplx beta) {
    Matrix a(2, 2);
    a << alpha, beta, std::conj(beta), -std::conj(alpha);
    return std::sqrt(static_cast<double>(m)) * a;
}

Circuit build_dihedral_circuit(std::size_t m, cplx alpha, cplx beta) {
    if (!is_power_of_two(m) || m < 4) fail(ErrorCode::UnsupportedParameter, "dihedral circuit needs m = 2^k >= 4");
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0 / static_cast<double>(m)) > tolerances().povm)
        fail(ErrorCode::NotNormalized, "|alpha|^2 + |beta|^2 must equal 1/m");
    const auto k = static_cast<unsigned>(log2_exact(m));
    Circuit c(k + 1);
    c.add(Gate::u2(0, dihedral_a(m, alpha, beta).adjoint()));
    for (unsigned i = 0; i < k; ++i) c.add(Gate::cx(k, i));
    c.add(Gate::qft(1, k));
    return c;
}

Matrix wh_b(cplx alpha, std::size_t j) {
    const cplx aj = std::pow(alpha, static_cast<double>(j));
    Matrix b(2, 2);
    b << 1.0, aj, std::conj(aj), -1.0;
    return b / std::sqrt(1.0 + std::norm(aj));
}

Matrix wh_j(std::size_t m) {
    if (!is_power_of_two(m) || m < 2) fail(ErrorCode::UnsupportedParameter, "J needs m = 2^k >= 2");
    std::vector<std::size_t> sigma(m);
    for (std::size_t i = 0; i < m / 2; ++i) sigma[i] = 2 * i;
    for (std::size_t i = 1; i <= m / 2; ++i) sigma[m - i] = 2 * i - 1;
    return permutation_matrix(sigma);
}

AFactor build_A_wh(cplx alpha, std::size_t m) {
    if (!is_power_of_two(m) || m < 2) fail(ErrorCode::UnsupportedParameter, "A factor needs m = 2^k >= 2");
    const auto k = static_cast<unsigned>(log2_exact(m));
    std::vector<Matrix> bs;
    for (unsigned t = 0; t < k; ++t) bs.push_back(wh_b(alpha, t + 1 < k ? std::size_t{1} << (k - 2 - t) : 0));

    Matrix tensor = bs[0];
    for (unsigned t = 1; t < k; ++t) tensor = kron(tensor, bs[t]);
    const Matrix j = wh_j(m);
    AFactor out{j.adjoint() * tensor * j * fourier(m).adjoint(), Circuit(k)};

    // J: flip the low wires when wire 0 is set, then rotate wire 0 to the bottom.
    std::vector<Gate> j_gates;
    for (unsigned i = 1; i < k; ++i) j_gates.push_back(Gate::cx(0, i));
    for (unsigned i = 0; i + 1 < k; ++i) j_gates.push_back(Gate::swap(i, i + 1));

    for (const auto &g : j_gates) out.circuit.add(g);
    for (unsigned t = 0; t < k; ++t) out.circuit.add(Gate::u2(t, bs[t].adjoint()));
    for (auto it = j_gates.rbegin(); it != j_gates.rend(); ++it) out.circuit.add(*it);
    out.circuit.add(Gate::qft(0, k - 1));
    return out;
}

Circuit wh_z_stage(std::size_t m) {
    if (!is_power_of_two(m) || m < 2) fail(ErrorCode::UnsupportedParameter, "Z stage needs m = 2^k >= 2");
    const auto k = static_cast<unsigned>(log2_exact(m));
    Circuit c(2 * k);
    for (unsigned i = 0; i < k; ++i) {
        const std::size_t w = std::size_t{1} << (k - 1 - i);
        std::vector<unsigned> targets;
        std::vector<double> angles;
        for (unsigned t = 0; t < k; ++t) {
            const std::size_t turns = (w << (k - 1 - t)) % m;
            if (turns == 0) continue;
            targets.push_back(k + t);
            angles.push_back(-2.0 * kPi * static_cast<double>(turns) / static_cast<double>(m));
        }
        if (!targets.empty()) c.add(Gate::cdiag(i, std::move(targets), std::move(angles)));
    }
    return c;
}

namespace {

Circuit assemble_wh(std::size_t m, const Circuit &a_dagger) {
    const auto k = static_cast<unsigned>(log2_exact(m));
    Circuit c(2 * k);
    for (const auto &g : a_dagger.gates) c.add(g);
    c.append(wh_z_stage(m));
    c.add(Gate::qft(0, k - 1));
    c.add(Gate::qft(k, 2 * k - 1, true));
    return c;
}

}  // namespace

Circuit build_wh_circuit(std::size_t m, const Vector &v) {
    if (!is_power_of_two(m) || m < 2) fail(ErrorCode::UnsupportedParameter, "WH circuit needs m = 2^k >= 2");
    if (static_cast<std::size_t>(v.size()) != m) fail(ErrorCode::DimensionMismatch, "fiducial vector length != m");
    if (std::abs(v.squaredNorm() - 1.0 / static_cast<double>(m)) > tolerances().povm)
        fail(ErrorCode::NotNormalized, "sum |v_i|^2 must equal 1/m");
    const Matrix row = std::sqrt(static_cast<double>(m)) * v.transpose() * fourier(m).adjoint();
    const Matrix a = complete_to_unitary(row);
    const auto k = static_cast<unsigned>(log2_exact(m));
    Circuit stage(k);
    stage.add(Gate::cu({}, wire_range(0, k - 1), a.adjoint()));
    return assemble_wh(m, stage);
}

Circuit build_wh_circuit(std::size_t m, cplx alpha) { return assemble_wh(m, build_A_wh(alpha, m).circuit); }

Circuit circuit_from_unitary(const Matrix &u) {
    if (u.rows() != u.cols() || u.rows() < 2) fail(ErrorCode::InvalidArgument, "need a square unitary of size >= 2");
    const Matrix padded = pad_to_qubits(u);
    const auto q = static_cast<unsigned>(qubits_for(static_cast<std::size_t>(u.rows())));
    Circuit c(q);
    c.add(Gate::cu({}, wire_range(0, q - 1), padded));
    return c;
}

// ---- text format ----

namespace {

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string wire_list(const std::vector<unsigned> &w, const std::vector<bool> *values = nullptr) {
    if (w.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        if (values && !values->empty() && !(*values)[i]) s += '!';
        s += std::to_string(w[i]);
    }
    return s;
}

std::string matrix_entries(const Matrix &m) {
    std::string s;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) s += ' ' + num(m(r, c).real()) + ' ' + num(m(r, c).imag());
    return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string &msg) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

struct Tokens {
    std::vector<std::string> items;
    std::size_t pos = 0;
    std::size_t line = 0;

    bool done() const { return pos >= items.size(); }
    std::size_t left() const { return items.size() - pos; }
    const std::string &next() {
        if (done()) parse_fail(line, "missing operand");
        return items[pos++];
    }
    unsigned wire() {
        const std::string &s = next();
        unsigned v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) parse_fail(line, "bad wire '" + s + "'");
        return v;
    }
    std::size_t index() {
        const std::string &s = next();
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) parse_fail(line, "bad index '" + s + "'");
        return v;
    }
    double real() {
        const std::string &s = next();
        double v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) parse_fail(line, "bad number '" + s + "'");
        return v;
    }
    Matrix matrix(std::size_t dim) {
        Matrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) {
                const double re = real();
                m(r, c) = cplx(re, real());
            }
        return m;
    }
    void end() {
        if (!done()) parse_fail(line, "trailing operand '" + items[pos] + "'");
    }
};

std::vector<unsigned> parse_wire_list(const std::string &s, std::size_t line, std::vector<bool> *values) {
    std::vector<unsigned> out;
    if (s == "-") return out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(',', start);
        if (end == std::string::npos) end = s.size();
        std::string item = s.substr(start, end - start);
        bool value = true;
        if (!item.empty() && item[0] == '!') {
            if (!values) parse_fail(line, "negated wire not allowed here");
            value = false;
            item.erase(0, 1);
        }
        unsigned w = 0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), w);
        if (item.empty() || ec != std::errc{} || p != item.data() + item.size())
            parse_fail(line, "bad wire list '" + s + "'");
        out.push_back(w);
        if (values) values->push_back(value);
        start = end + 1;
    }
    return out;
}

}  // namespace

std::string to_text(const Circuit &c) {
    std::ostringstream os;
    os << "qubits " << c.num_qubits << '\n';
    for (const auto &g : c.gates) {
        switch (g.kind) {
            case GateKind::H: os << "H " << g.targets[0]; break;
            case GateKind::Phase: os << "P " << g.targets[0] << ' ' << num(g.angles[0]); break;
            case GateKind::U2: os << "U2 " << g.targets[0] << matrix_entries(g.matrix); break;
            case GateKind::CX:
                if (!g.control_values.empty() && !g.control_values[0])
                    os << "CU !" << g.controls[0] << ' ' << g.targets[0] << matrix_entries(pauli_x());
                else
                    os << "CX " << g.controls[0] << ' ' << g.targets[0];
                break;
            case GateKind::CPhase:
                os << "CPHASE " << g.controls[0] << ' ' << g.targets[0] << ' ' << num(g.angles[0]);
                break;
            case GateKind::CU:
                os << "CU " << wire_list(g.controls, &g.control_values) << ' ' << wire_list(g.targets)
                   << matrix_entries(g.matrix);
                break;
            case GateKind::Swap: os << "SWAP " << g.targets[0] << ' ' << g.targets[1]; break;
            case GateKind::Perm:
                os << "PERM";
                for (auto p : g.perm) os << ' ' << p;
                break;
            case GateKind::CDiag:
                os << "CDIAG " << g.controls[0];
                for (auto t : g.targets) os << ' ' << t;
                for (auto a : g.angles) os << ' ' << num(a);
                break;
            case GateKind::QFT:
                os << "QFT " << g.targets.front() << ' ' << g.targets.back() << (g.inverse ? " inv" : "");
                break;
        }
        os << '\n';
    }
    return os.str();
}

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    Circuit c;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        Tokens tok;
        tok.line = line_no;
        std::istringstream ls(raw);
        for (std::string s; ls >> s;) tok.items.push_back(s);
        if (tok.done()) continue;
        const std::string op = tok.next();
        if (!have_header) {
            if (op != "qubits") parse_fail(line_no, "expected 'qubits N' header");
            c.num_qubits = tok.index();
            tok.end();
            if (c.num_qubits == 0 || c.num_qubits > 30) parse_fail(line_no, "qubit count must be in 1..30");
            have_header = true;
            continue;
        }
        if (op == "H") {
            c.add(Gate::h(tok.wire()));
        } else if (op == "P") {
            const unsigned w = tok.wire();
            c.add(Gate::phase(w, tok.real()));
        } else if (op == "U2") {
            const unsigned w = tok.wire();
            c.add(Gate::u2(w, tok.matrix(2)));
        } else if (op == "CX") {
            const unsigned ctl = tok.wire();
            c.add(Gate::cx(ctl, tok.wire()));
        } else if (op == "CPHASE") {
            const unsigned ctl = tok.wire();
            const unsigned t = tok.wire();
            c.add(Gate::cphase(ctl, t, tok.real()));
        } else if (op == "CDIAG") {
            const unsigned ctl = tok.wire();
            if (tok.left() == 0 || tok.left() % 2) parse_fail(line_no, "CDIAG needs matching targets and phases");
            const std::size_t t = tok.left() / 2;
            std::vector<unsigned> targets;
            std::vector<double> angles;
            for (std::size_t i = 0; i < t; ++i) targets.push_back(tok.wire());
            for (std::size_t i = 0; i < t; ++i) angles.push_back(tok.real());
            c.add(Gate::cdiag(ctl, std::move(targets), std::move(angles)));
        } else if (op == "PERM") {
            std::vector<std::size_t> perm;
            while (!tok.done()) perm.push_back(tok.index());
            c.add(Gate::permutation(std::move(perm)));
        } else if (op == "QFT") {
            const unsigned lo = tok.wire();
            const unsigned hi = tok.wire();
            bool inv = false;
            if (!tok.done()) {
                if (tok.next() != "inv") parse_fail(line_no, "QFT flag must be 'inv'");
                inv = true;
            }
            if (hi < lo) parse_fail(line_no, "QFT range is empty");
            c.add(Gate::qft(lo, hi, inv));
        } else if (op == "SWAP") {
            const unsigned a = tok.wire();
            c.add(Gate::swap(a, tok.wire()));
        } else if (op == "CU") {
            std::vector<bool> values;
            auto controls = parse_wire_list(tok.next(), line_no, &values);
            auto targets = parse_wire_list(tok.next(), line_no, nullptr);
            if (targets.empty() || targets.size() > 12) parse_fail(line_no, "CU needs 1..12 targets");
            const Matrix m = tok.matrix(std::size_t{1} << targets.size());
            c.add(Gate::cu(std::move(controls), std::move(targets), m, std::move(values)));
        } else {
            parse_fail(line_no, "unknown gate '" + op + "'");
        }
        tok.end();
    }
    if (!have_header) parse_fail(line_no, "missing 'qubits N' header");
    try {
        c.validate();
    } catch (const Error &e) {
        if (e.code() == ErrorCode::WireOutOfRange) throw;
        fail(ErrorCode::ParseError, e.what());
    }
    return c;
}

Matrix u3_matrix(double theta, double phi, double lambda) {
    Matrix m(2, 2);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda);
    return m;
}

U3Angles zyz_decompose(const Matrix &u) {
    const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    U3Angles a;
    const double gamma = std::arg(det) / 2;
    const Matrix v = u * std::polar(1.0, -gamma);  // det v = 1
    a.theta = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
    const double sum = std::abs(v(1, 1)) > 1e-12 ? 2.0 * std::arg(v(1, 1)) : 0.0;
    const double diff = std::abs(v(1, 0)) > 1e-12 ? 2.0 * std::arg(v(1, 0)) : 0.0;
    a.phi = (sum + diff) / 2;
    a.lambda = (sum - diff) / 2;
    a.global = gamma - (a.phi + a.lambda) / 2;
    // Fix the residual sign ambiguity of the half-angle recovery.
    const Matrix rebuilt = std::polar(1.0, a.global) * u3_matrix(a.theta, a.phi, a.lambda);
    if ((rebuilt - u).cwiseAbs().maxCoeff() > 1e-9) a.global += kPi;
    return a;
}

std::string to_qasm(const Circuit &c) {
    c.validate();
    const Circuit low = lower(c);
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.num_qubits << "];\n";
    auto q = [](unsigned w) { return "q[" + std::to_string(w) + "]"; };
    for (const auto &g : low.gates) {
        std::vector<unsigned> flipped;
        for (std::size_t i = 0; i < g.controls.size(); ++i)
            if (!g.control_values.empty() && !g.control_values[i]) flipped.push_back(g.controls[i]);
        if (g.kind != GateKind::CU)
            for (auto w : flipped) os << "x " << q(w) << ";\n";
        switch (g.kind) {
            case GateKind::H: os << "h " << q(g.targets[0]) << ";\n"; break;
            case GateKind::Phase: os << "u1(" << num(g.angles[0]) << ") " << q(g.targets[0]) << ";\n"; break;
            case GateKind::U2: {
                const auto a = zyz_decompose(g.matrix);
                os << "u3(" << num(a.theta) << "," << num(a.phi) << "," << num(a.lambda) << ") " << q(g.targets[0])
                   << ";\n";
                break;
            }
            case GateKind::CX: os << "cx " << q(g.controls[0]) << "," << q(g.targets[0]) << ";\n"; break;
            case GateKind::CPhase:
                os << "cu1(" << num(g.angles[0]) << ") " << q(g.controls[0]) << "," << q(g.targets[0]) << ";\n";
                break;
            case GateKind::CDiag:
                for (std::size_t t = 0; t < g.targets.size(); ++t)
                    os << "cu1(" << num(g.angles[t]) << ") " << q(g.controls[0]) << "," << q(g.targets[t]) << ";\n";
                break;
            case GateKind::Swap: os << "swap " << q(g.targets[0]) << "," << q(g.targets[1]) << ";\n"; break;
            case GateKind::CU:
                os << "// CU controls " << wire_list(g.controls, &g.control_values) << " targets "
                   << wire_list(g.targets) << " has no qelib1 equivalent\n";
                break;
            case GateKind::Perm: os << "// PERM has no qelib1 equivalent\n"; break;
            case GateKind::QFT: break;
        }
        if (g.kind != GateKind::CU)
            for (auto w : flipped) os << "x " << q(w) << ";\n";
    }
    return os.str();
}

}  // namespace covneu
