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

// covneu: command-line front end.
//
// Exit codes: 0 ok, 2 validation failure, 3 input error,
// 4 covariance or constituent error, 5 internal numerical failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "covneu/circuits.hpp"
#include "covneu/error.hpp"
#include "covneu/io.hpp"
#include "covneu/synth.hpp"
#include "covneu/tolerance.hpp"

namespace {

using namespace covneu;

constexpr int kOk = 0;
constexpr int kValidationFailed = 2;
constexpr int kInputError = 3;
constexpr int kCovarianceError = 4;
constexpr int kNumericalFailure = 5;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotCovariant:
        case ErrorCode::NotAConstituent:
        case ErrorCode::HypothesisViolated: return kCovarianceError;
        case ErrorCode::RowsNotOrthonormal: return kValidationFailed;
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidState:
        case ErrorCode::UnsupportedParameter:
        case ErrorCode::WireOutOfRange:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::NotNormalized:
        case ErrorCode::ParseError:
        case ErrorCode::NonUnitaryGenerator:
        case ErrorCode::OrderExceeded: return kInputError;
        default: return kNumericalFailure;
    }
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        io::write_text_file(path, text);
}

std::optional<Family> family_from_name(const std::string &name) {
    if (name == "cyclic") return Family::Cyclic;
    if (name == "dihedral") return Family::Dihedral;
    if (name == "wh" || name == "weyl-heisenberg") return Family::WeylHeisenberg;
    return std::nullopt;
}

struct ValidateJob {
    std::string povm;
};

int run_validate(const ValidateJob &job) {
    const auto loaded = io::povm_from_json(io::read_json_file(job.povm));
    const auto report = validate(loaded.povm);
    std::printf("dim %zu\noperators %zu\ncompleteness_deviation %.3e\nduplicates %zu\n", loaded.povm.dim,
                loaded.povm.size(), report.completeness_deviation, report.duplicates.size());
    std::printf("%s\n", report.passed ? "valid" : "invalid");
    return report.passed ? kOk : kValidationFailed;
}

struct SynthesizeJob {
    std::string povm, group, family, output, decomposition_dump;
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::uint64_t decompose_seed = 0xC0FFEE;
};

int run_synthesize(const SynthesizeJob &job) {
    const auto loaded = io::povm_from_json(io::read_json_file(job.povm));
    const RankOnePOVM &p = loaded.povm;
    const auto report = validate(p);
    if (!report.passed) {
        std::fprintf(stderr, "POVM is invalid: completeness deviation %.3e\n", report.completeness_deviation);
        return kValidationFailed;
    }
    SynthesisOptions options;
    options.verify_trials = job.trials;
    options.verify_seed = job.seed;
    options.decompose.seed = job.decompose_seed;

    std::optional<Representation> phi;
    if (!job.family.empty()) {
        const auto family = family_from_name(job.family);
        if (!family) fail(ErrorCode::InvalidArgument, "unknown family '" + job.family + "'");
        FamilySpec spec{*family, 0, 0, 0};
        io::json group;
        if (*family == Family::Cyclic) {
            spec.n = p.size();
            spec.d = p.dim;
            group = {{"family", "cyclic"}, {"param", p.size()}};
        } else if (*family == Family::Dihedral) {
            spec.m = p.size() / 2;
            group = {{"family", "dihedral"}, {"param", spec.m}};
        } else {
            spec.m = p.dim;
            group = {{"family", "weyl-heisenberg"}, {"param", spec.m}};
        }
        options.family = spec;
        phi = io::representation_from_json(group, p.dim);
    }
    if (!job.group.empty()) phi = io::representation_from_json(io::read_json_file(job.group), p.dim);
    if (!phi) phi = loaded.phi;
    if (!phi) fail(ErrorCode::InvalidArgument, "no symmetry given: use --group, --family, or an orbit POVM");

    const SynthesisResult r = synthesize(p, *phi, options);
    emit(job.output, io::synthesis_to_json(r).dump(2) + "\n");
    if (!job.decomposition_dump.empty())
        io::write_text_file(job.decomposition_dump, io::json{{"phi", io::decomposition_to_json(r.dec_phi)},
                                                             {"mon", io::decomposition_to_json(r.dec_mon)}}
                                                        .dump(2) +
                                                        "\n");
    std::fprintf(stderr, "basis %s, group order %zu, symmetry defect %.3e, max deviation %.3e over %zu states\n",
                 r.basis_source.c_str(), r.phi.group->order(), r.symmetry_defect, r.verification.max_deviation,
                 r.verification.trials);
    return kOk;
}

struct CircuitJob {
    std::string family, alpha = "0.5", beta, vector_file, from_result, output;
    std::size_t n = 0, d = 1, m = 0;
    bool qasm = false;
};

int run_circuit(const CircuitJob &job) {
    Circuit c;
    if (!job.from_result.empty()) {
        const auto stored = io::stored_result_from_json(io::read_json_file(job.from_result));
        c = circuit_from_unitary(stored.tilde_m.adjoint());
    } else {
        const auto family = family_from_name(job.family);
        if (!family) fail(ErrorCode::InvalidArgument, "--family must be cyclic, dihedral or wh");
        switch (*family) {
            case Family::Cyclic: c = build_cyclic_circuit(job.n, job.d); break;
            case Family::Dihedral: {
                const cplx alpha = io::parse_complex(job.alpha);
                if (job.beta.empty()) fail(ErrorCode::InvalidArgument, "dihedral circuit needs --beta");
                c = build_dihedral_circuit(job.m, alpha, io::parse_complex(job.beta));
                break;
            }
            case Family::WeylHeisenberg:
                if (!job.vector_file.empty())
                    c = build_wh_circuit(job.m, io::vector_from_json(io::read_json_file(job.vector_file)));
                else
                    c = build_wh_circuit(job.m, io::parse_complex(job.alpha));
                break;
        }
    }
    emit(job.output, job.qasm ? to_qasm(c) : to_text(c));
    std::fprintf(stderr, "%zu qubits, %zu gates, %zu elementary\n", c.num_qubits, c.gates.size(),
                 elementary_gate_count(c));
    return kOk;
}

struct SimulateJob {
    std::string circuit, state;
    std::optional<std::size_t> basis;
    std::uint64_t shots = 0;
    std::uint64_t seed = 42;
};

int run_simulate(const SimulateJob &job) {
    const Circuit c = parse_circuit(io::read_text_file(job.circuit));
    Matrix rho;
    if (!job.state.empty()) {
        const Matrix s = io::matrix_from_json(io::read_json_file(job.state));
        rho = s.cols() == 1 ? Matrix(s * s.adjoint()) : s;
    } else {
        const std::size_t k = job.basis.value_or(0);
        if (k >= c.dim()) fail(ErrorCode::InvalidArgument, "--basis exceeds the register");
        rho = Matrix::Zero(static_cast<Eigen::Index>(c.dim()), static_cast<Eigen::Index>(c.dim()));
        rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    }
    if (job.shots == 0) {
        const auto probs = outcome_probabilities(c, rho);
        std::printf("outcome probability\n");
        for (std::size_t k = 0; k < probs.size(); ++k) std::printf("%zu %.12f\n", k, probs[k]);
        return kOk;
    }
    const auto counts = sample(c, rho, job.shots, job.seed);
    std::printf("outcome count frequency\n");
    for (std::size_t k = 0; k < counts.size(); ++k)
        std::printf("%zu %llu %.6f\n", k, static_cast<unsigned long long>(counts[k]),
                    static_cast<double>(counts[k]) / static_cast<double>(job.shots));
    return kOk;
}

struct VerifyJob {
    std::string result, povm;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
};

int run_verify(const VerifyJob &job) {
    const auto stored = io::stored_result_from_json(io::read_json_file(job.result));
    const auto loaded = io::povm_from_json(io::read_json_file(job.povm));
    const std::size_t trials = job.trials.value_or(stored.verification.trials);
    const std::uint64_t seed = job.seed.value_or(stored.verification.seed);
    if (static_cast<std::size_t>(stored.tilde_m.rows()) != loaded.povm.size())
        fail(ErrorCode::DimensionMismatch, "result and POVM sizes differ");
    const double top = max_abs(stored.tilde_m.topRows(static_cast<Eigen::Index>(loaded.povm.dim)) -
                               defining_matrix(loaded.povm));
    const auto r = verify(stored.tilde_m, loaded.povm, trials, seed);
    std::printf("unitary_deviation %.3e\ntop_rows_deviation %.3e\nmax_deviation %.3e\nmax_sum_error %.3e\n",
                unitary_deviation(stored.tilde_m), top, r.max_deviation, r.max_sum_error);
    bool ok = r.max_deviation <= tolerances().povm && top <= tolerances().dec &&
              unitary_deviation(stored.tilde_m) <= tolerances().unitary;
    if (trials == stored.verification.trials && seed == stored.verification.seed) {
        const double drift = std::abs(r.max_deviation - stored.verification.max_deviation);
        std::printf("stored_drift %.3e\n", drift);
        ok = ok && drift <= 1e-12;
    }
    std::printf("%s\n", ok ? "verified" : "failed");
    return ok ? kOk : kValidationFailed;
}

int run_families() {
    std::printf(
        "cyclic           Z_n on C^d, group file {\"family\":\"cyclic\",\"param\":n}; circuits need n = 2^k\n"
        "dihedral         D_2m on C^2, group file {\"family\":\"dihedral\",\"param\":m}; circuits need m = 2^k >= 4\n"
        "weyl-heisenberg  order m^3 group on C^m, {\"family\":\"weyl-heisenberg\",\"param\":m}; circuits need m = 2^k\n");
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"covneu: symmetric dilation of group-covariant POVMs"};
    app.require_subcommand(1);
    std::string tol;
    app.add_option("--tol", tol, "tolerance overrides, e.g. povm=1e-8,dec=1e-6");

    ValidateJob validate_job;
    auto *validate_cmd = app.add_subcommand("validate", "check completeness of a POVM file");
    validate_cmd->add_option("povm", validate_job.povm, "POVM JSON file")->required();

    SynthesizeJob synth_job;
    auto *synth_cmd = app.add_subcommand("synthesize", "symmetric dilation of a covariant POVM");
    synth_cmd->add_option("povm", synth_job.povm, "POVM JSON file")->required();
    auto *group_opt = synth_cmd->add_option("--group", synth_job.group, "group JSON file");
    synth_cmd->add_option("--family", synth_job.family, "closed-form bases: cyclic, dihedral or wh")
        ->excludes(group_opt);
    synth_cmd->add_option("-o,--output", synth_job.output, "result JSON file (stdout if omitted)");
    synth_cmd->add_option("--dump-decomposition", synth_job.decomposition_dump, "write both decompositions here");
    synth_cmd->add_option("--trials", synth_job.trials, "verification states")->capture_default_str();
    synth_cmd->add_option("--seed", synth_job.seed, "verification seed")->capture_default_str();
    synth_cmd->add_option("--decompose-seed", synth_job.decompose_seed, "decomposition seed")->capture_default_str();

    CircuitJob circuit_job;
    auto *circuit_cmd = app.add_subcommand("circuit", "emit a family circuit in the native text format");
    auto *fam_opt = circuit_cmd->add_option("--family", circuit_job.family, "cyclic, dihedral or wh");
    circuit_cmd->add_option("--from-result", circuit_job.from_result, "wrap tilde-M^dagger of a result file")
        ->excludes(fam_opt);
    circuit_cmd->add_option("--n", circuit_job.n, "cyclic group order");
    circuit_cmd->add_option("--d", circuit_job.d, "cyclic POVM dimension")->capture_default_str();
    circuit_cmd->add_option("--m", circuit_job.m, "dihedral or WH parameter");
    circuit_cmd->add_option("--alpha", circuit_job.alpha, "complex re+imi")->capture_default_str();
    circuit_cmd->add_option("--beta", circuit_job.beta, "complex re+imi (dihedral)");
    circuit_cmd->add_option("--vector", circuit_job.vector_file, "explicit WH fiducial vector JSON");
    circuit_cmd->add_flag("--qasm", circuit_job.qasm, "OpenQASM 2 export instead of the native format");
    circuit_cmd->add_option("-o,--output", circuit_job.output, "output file (stdout if omitted)");

    SimulateJob sim_job;
    auto *sim_cmd = app.add_subcommand("simulate", "measure a circuit in the computational basis");
    sim_cmd->add_option("circuit", sim_job.circuit, "circuit text file")->required();
    auto *state_opt = sim_cmd->add_option("--state", sim_job.state, "density matrix or column vector JSON");
    sim_cmd->add_option("--basis", sim_job.basis, "start in basis state k")->excludes(state_opt);
    sim_cmd->add_option("--shots", sim_job.shots, "0 prints exact probabilities")->capture_default_str();
    sim_cmd->add_option("--seed", sim_job.seed, "sampling seed")->capture_default_str();

    VerifyJob verify_job;
    auto *verify_cmd = app.add_subcommand("verify", "re-check a stored synthesis result");
    verify_cmd->add_option("result", verify_job.result, "synthesis result JSON")->required();
    verify_cmd->add_option("povm", verify_job.povm, "POVM JSON file")->required();
    verify_cmd->add_option("--trials", verify_job.trials, "override the stored trial count");
    verify_cmd->add_option("--seed", verify_job.seed, "override the stored seed");

    auto *families_cmd = app.add_subcommand("families", "list the built-in group families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        load_tolerances_from_env();
        if (!tol.empty()) tolerances() = parse_tolerances(tol, tolerances());
        if (*validate_cmd) return run_validate(validate_job);
        if (*synth_cmd) return run_synthesize(synth_job);
        if (*circuit_cmd) return run_circuit(circuit_job);
        if (*sim_cmd) return run_simulate(sim_job);
        if (*verify_cmd) return run_verify(verify_job);
        if (*families_cmd) return run_families();
    } catch (const Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumericalFailure;
    }
    return kInputError;
}
