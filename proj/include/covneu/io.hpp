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
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "covneu/groups.hpp"
#include "covneu/povm.hpp"
#include "covneu/repdec.hpp"
#include "covneu/synth.hpp"

// JSON forms shared by the command-line tool. Complex numbers are [re, im]
// pairs; every reader rejects unknown keys with ParseError.
namespace covneu::io {

using json = nlohmann::json;

json complex_to_json(cplx z);
cplx complex_from_json(const json &j);

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const json &j);

/// [[re, im], ...].
json vector_to_json(const Vector &v);
Vector vector_from_json(const json &j);

/// {"dim": d, "generators": [matrix, ...], "phase_quotient": bool} gives the
/// natural representation of the generated group. {"family": name,
/// "param": n} gives a built-in: "cyclic" is Z_n on C^{dim} by
/// diag(1, w, ..., w^{dim-1}), "dihedral" is D_{2n} on C^2, and
/// "weyl-heisenberg" is the order n^3 group on C^n. `dim` is only used by
/// the cyclic family.
Representation representation_from_json(const json &j, std::size_t dim);

struct LoadedPOVM {
    RankOnePOVM povm;
    std::optional<Representation> phi;  // set for the orbit form
};

/// {"dim": d, "vectors": [vector, ...]} or {"orbit": {"group": group,
/// "initial": vector, "dedupe": bool}}. Orbit vectors that agree up to a
/// phase are merged unless "dedupe" is false.
LoadedPOVM povm_from_json(const json &j);
json povm_to_json(const RankOnePOVM &p);

json decomposition_to_json(const Decomposition &dec);
Decomposition decomposition_from_json(const json &j);

json verification_to_json(const VerificationReport &r);
VerificationReport verification_from_json(const json &j);

json synthesis_to_json(const SynthesisResult &r);

/// The parts of a stored synthesis result needed to re-verify it.
struct StoredResult {
    Matrix m;
    Matrix tilde_m;
    VerificationReport verification;
};
StoredResult stored_result_from_json(const json &j);

/// Parses "re", "re+imi", "re-imi", "imi". Throws ParseError.
cplx parse_complex(std::string_view text);

/// Reads and parses a JSON file. Throws ParseError (also for unreadable files).
json read_json_file(const std::string &path);
std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace covneu::io
