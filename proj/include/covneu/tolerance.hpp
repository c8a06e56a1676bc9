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

#include <string_view>

namespace covneu {

/// Numerical thresholds shared by every module.
struct Tolerances {
    double unitary = 1e-9;  // max |(A A^dagger - I)_ij| for a unitary
    double rank = 1e-8;     // residual norm / singular value treated as zero
    double group = 1e-8;    // entrywise equality of group elements and images
    double povm = 1e-9;     // completeness of a POVM and validity of states
    double dec = 1e-7;      // block structure of decompositions and intertwiners
    double duplicate = 1e-7;  // Frobenius distance below which two operators coincide
};

/// Process-wide defaults. Mutating them is not thread-safe; do it once at startup.
Tolerances &tolerances();

/// Parses "key=value[,key=value...]" (keys: unitary, rank, group, povm, dec,
/// duplicate) on top of `base`. Throws Error(InvalidArgument) on unknown keys
/// or non-positive values.
Tolerances parse_tolerances(std::string_view text, Tolerances base);

/// Applies COVNEU_TOL from the environment, if set, to the process defaults.
void load_tolerances_from_env();

}  // namespace covneu
