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

#include <stdexcept>
#include <string>
#include <string_view>

namespace covneu {

enum class ErrorCode {
    InvalidArgument,
    RowsNotOrthonormal,
    NonUnitaryGenerator,
    OrderExceeded,
    InfinitePhaseGroup,
    InvalidState,
    NotCompletable,
    NotCovariant,
    DecompositionFailed,
    CharacterMismatch,
    UnsupportedParameter,
    NotAConstituent,
    NotInIntertwiningSpace,
    HypothesisViolated,
    StructureViolation,
    WireOutOfRange,
    DimensionMismatch,
    NotNormalized,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// All library failures surface as this exception; `code()` identifies the
/// failure class so callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

}  // namespace covneu
