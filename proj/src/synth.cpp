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

#include "covneu/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "covneu/error.hpp"
#include "covneu/tolerance.hpp"

namespace covneu {

namespace {

const char *family_name(Family f) {
    switch (f) {
        case Family::Cyclic: return "cyclic";
        case Family::Dihedral: return "dihedral";
        case Family::WeylHeisenberg: return "weyl-heisenberg";
    }
    return "unknown";
}

}  // namespace

Matrix neumark_plain(const Matrix &m) {
    const double dev = row_orthonormality_deviation(m);
    if (dev > tolerances().povm)
        fail(ErrorCode::RowsNotOrthonormal, "M M^dagger deviates from I by " + std::to_string(dev));
    return complete_to_unitary(m, tolerances().povm, tolerances().rank);
}

SynthesisResult synthesize(const RankOnePOVM &p, const Representation &phi_in, const SynthesisOptions &options) {
    SynthesisResult r;
    r.m = defining_matrix(p);
    const auto d = static_cast<std::size_t>(r.m.rows());
    const auto n = static_cast<std::size_t>(r.m.cols());
    const double dev = row_orthonormality_deviation(r.m);
    if (dev > tolerances().povm)
        fail(ErrorCode::RowsNotOrthonormal, "M M^dagger deviates from I by " + std::to_string(dev));
    if (phi_in.degree() != d) fail(ErrorCode::DimensionMismatch, "representation degree differs from POVM dim");

    // Scalars act trivially under conjugation, so the extension measures the same POVM.
    if (phi_in.group->phase_quotient() || homomorphism_defect(phi_in) > tolerances().group) {
        const CentralExtension ext = central_extension(make_projective(phi_in.group, phi_in.images));
        r.phi = ext.rep;
        r.central_extension = true;
    } else {
        r.phi = phi_in;
    }

    r.mon = derive_monomial(r.phi, p).representation();

    Decomposition dec_phi, dec_mon;
    if (options.family) {
        const FamilyBases bases = family_bases(*options.family);
        if (static_cast<std::size_t>(bases.u.rows()) != d || static_cast<std::size_t>(bases.w.rows()) != n)
            fail(ErrorCode::DimensionMismatch, "family parameters do not match the POVM");
        dec_phi = decomposition_from_base_change(r.phi, bases.u);
        dec_mon = decomposition_from_base_change(r.mon, bases.w);
        r.basis_source = family_name(options.family->family);
    } else {
        dec_phi = decompose(r.phi, options.decompose);
        dec_mon = decompose(r.mon, options.decompose);
        r.basis_source = "numeric";
    }

    const Extension ext = build_phi_prime(r.phi, dec_phi, r.mon, dec_mon);
    r.dec_phi = ext.dec_phi;
    r.dec_mon = ext.dec_mon;
    r.tau = ext.tau;
    r.u = ext.dec_phi.base_change;
    r.w = ext.dec_mon.base_change;

    const Matrix c = r.u * r.m * r.w.adjoint();
    r.tilde_c = complete_intertwiner(c, ext, &r.coefficients);

    r.v = options.v ? *options.v : identity(n - d);
    if (static_cast<std::size_t>(r.v.rows()) != n - d || unitary_deviation(r.v) > tolerances().unitary)
        fail(ErrorCode::InvalidArgument, "V must be a unitary of size n - d");
    r.tilde_m = direct_sum(r.u.adjoint(), r.v.adjoint()) * r.tilde_c * r.w;

    r.top_rows_deviation = max_abs(r.tilde_m.topRows(d) - r.m);
    if (r.top_rows_deviation > tolerances().dec)
        fail(ErrorCode::DecompositionFailed,
             "top rows of tilde M deviate from M by " + std::to_string(r.top_rows_deviation));
    r.tilde_m.topRows(d) = r.m;

    r.phi_prime.group = ext.phi_prime.group;
    for (const auto &img : ext.phi_prime.images) r.phi_prime.images.push_back(r.v.adjoint() * img * r.v);
    for (std::size_t g = 0; g < r.phi.images.size(); ++g) {
        const Matrix left = direct_sum(r.phi.images[g], r.phi_prime.images[g]);
        r.symmetry_defect = std::max(r.symmetry_defect, max_abs(left * r.tilde_m - r.tilde_m * r.mon.images[g]));
    }
    if (r.symmetry_defect > tolerances().dec)
        fail(ErrorCode::DecompositionFailed, "symmetry equation fails by " + std::to_string(r.symmetry_defect));

    r.verification = verify(r.tilde_m, p, options.verify_trials, options.verify_seed);
    return r;
}

std::vector<Matrix> random_density_matrices(std::size_t d, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Matrix> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        Vector psi(d);
        for (std::size_t i = 0; i < d; ++i) psi(i) = cplx(normal(rng), normal(rng));
        psi.normalize();
        out.push_back(0.9 * psi * psi.adjoint() + (0.1 / static_cast<double>(d)) * Matrix::Identity(d, d));
    }
    return out;
}

std::vector<double> dilated_probabilities(const Matrix &tilde_m, const Matrix &rho) {
    const auto n = tilde_m.rows();
    const auto d = rho.rows();
    Matrix padded = Matrix::Zero(n, n);
    padded.topLeftCorner(d, d) = rho;
    const Matrix out = tilde_m.adjoint() * padded * tilde_m;
    std::vector<double> probs(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) probs[static_cast<std::size_t>(k)] = out(k, k).real();
    return probs;
}

VerificationReport verify(const Matrix &tilde_m, const RankOnePOVM &p, std::size_t trials, std::uint64_t seed) {
    VerificationReport report{trials, seed, 0.0, 0.0};
    const auto states = random_density_matrices(p.dim, trials, seed);
    std::vector<double> deviation(trials, 0.0), sum_error(trials, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < trials; ++t) {
        const auto expect = probabilities(p, states[t]);
        const auto got = dilated_probabilities(tilde_m, states[t]);
        double worst = 0.0, total = 0.0;
        for (std::size_t k = 0; k < got.size(); ++k) {
            const double e = k < expect.size() ? expect[k] : 0.0;
            worst = std::max(worst, std::abs(got[k] - e));
            total += got[k];
        }
        deviation[t] = worst;
        sum_error[t] = std::abs(total - 1.0);
    }
    for (std::size_t t = 0; t < trials; ++t) {
        report.max_deviation = std::max(report.max_deviation, deviation[t]);
        report.max_sum_error = std::max(report.max_sum_error, sum_error[t]);
    }
    return report;
}

std::size_t qubits_for(std::size_t n) {
    std::size_t q = 0;
    while ((std::size_t{1} << q) < n) ++q;
    return q;
}

Matrix pad_to_qubits(const Matrix &u) {
    const auto n = static_cast<std::size_t>(u.rows());
    const std::size_t full = std::size_t{1} << qubits_for(n);
    return full == n ? u : direct_sum(u, identity(full - n));
}

}  // namespace covneu
