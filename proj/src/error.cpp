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

#include "covneu/error.hpp"

#include <cstdlib>
#include <string>

#include "covneu/tolerance.hpp"

namespace covneu {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::RowsNotOrthonormal: return "RowsNotOrthonormal";
        case ErrorCode::NonUnitaryGenerator: return "NonUnitaryGenerator";
        case ErrorCode::OrderExceeded: return "OrderExceeded";
        case ErrorCode::InfinitePhaseGroup: return "InfinitePhaseGroup";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::NotCompletable: return "NotCompletable";
        case ErrorCode::NotCovariant: return "NotCovariant";
        case ErrorCode::DecompositionFailed: return "DecompositionFailed";
        case ErrorCode::CharacterMismatch: return "CharacterMismatch";
        case ErrorCode::UnsupportedParameter: return "UnsupportedParameter";
        case ErrorCode::NotAConstituent: return "NotAConstituent";
        case ErrorCode::NotInIntertwiningSpace: return "NotInIntertwiningSpace";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::StructureViolation: return "StructureViolation";
        case ErrorCode::WireOutOfRange: return "WireOutOfRange";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Tolerances &tolerances() {
    static Tolerances defaults;
    return defaults;
}

Tolerances parse_tolerances(std::string_view text, Tolerances base) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string item(text.substr(pos, end - pos));
        pos = end + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "tolerance entry without '=': " + item);
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        char *parse_end = nullptr;
        double v = std::strtod(value.c_str(), &parse_end);
        if (parse_end == value.c_str() || *parse_end != '\0')
            fail(ErrorCode::InvalidArgument, "bad tolerance value: " + item);
        if (!(v > 0.0)) fail(ErrorCode::InvalidArgument, "tolerances must be positive: " + item);
        if (key == "unitary") base.unitary = v;
        else if (key == "rank") base.rank = v;
        else if (key == "group") base.group = v;
        else if (key == "povm") base.povm = v;
        else if (key == "dec") base.dec = v;
        else if (key == "duplicate") base.duplicate = v;
        else fail(ErrorCode::InvalidArgument, "unknown tolerance key: " + key);
    }
    return base;
}

void load_tolerances_from_env() {
    if (const char *env = std::getenv("COVNEU_TOL")) tolerances() = parse_tolerances(env, tolerances());
}

}  // namespace covneu
