// Copyright 2026 The bddppl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "bddppl/ast.hpp"

namespace bddppl {

/// Annotates every subexpression with its type and validates the program.
/// Throws `Error` with one of UnboundIdentifier, TypeMismatch,
/// RecursiveOrForwardCall, UnknownFunction, DuplicateFunction, ObserveNonBool,
/// SizeMismatch or BadDistribution.
Program typecheck(const Program& program);

/// Type of the main expression of a typechecked program.
TypePtr output_type(const Program& typed);

/// Tolerance on the total mass of `discrete` parameters.
inline constexpr double kDiscreteSumTolerance = 1e-6;

/// Checks `discrete` parameters; throws BadDistribution.
void validate_discrete(const std::vector<double>& params,
                       const std::optional<SourceSpan>& span = std::nullopt);

}  // namespace bddppl
