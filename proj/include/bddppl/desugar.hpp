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

#include <string>
#include <vector>

#include "bddppl/ast.hpp"

namespace bddppl {

/// One-hot expansion of `discrete(params)`: a chain of lets binding
/// `names[i]` to "no earlier indicator and a coin of the remaining mass",
/// returning the right-nested indicator tuple. `names` must hold
/// `params.size()` fresh names. Throws BadDistribution.
ExprPtr desugar_discrete(const std::vector<double>& params, const std::vector<std::string>& names);
ExprPtr desugar_discrete(const std::vector<double>& params, NameSupply& names);

/// `iterate(f, init, k)` as `f(f(...f(init)))`, k calls.
ExprPtr desugar_iterate(const std::string& func, ExprPtr init, int count);

/// Lowers integer literals, `+`, `*` and `==` of a typechecked expression
/// (only the root node; children must already be lowered and are passed in).
ExprPtr desugar_int_op(const Expr& typed, std::vector<ExprPtr> lowered_kids, NameSupply& names);

/// Hoists every non-atomic subexpression in an atomic position into a fresh
/// `let`, left to right. Sugar nodes are traversed but their operands are not
/// hoisted.
ExprPtr normalize_anf(const Expr& e, NameSupply& names);

/// Removes all surface sugar from a typechecked program: multi-parameter
/// functions, Boolean operators, `==`, integers, `discrete` and `iterate`.
/// The result is not yet in A-normal form.
Program desugar_program(const Program& typed);

/// The full front end after parsing: typecheck, desugar, A-normal form,
/// and a re-typecheck of the core program.
struct LoweredProgram {
  Program surface;       // typechecked input
  Program core;          // typechecked core program
  TypePtr surface_type;  // output type before integer lowering
  TypePtr core_type;     // output type of the core program
};

LoweredProgram lower_program(const Program& parsed);

/// Replaces every call by `let formal = arg in body`, recursively. Input must
/// be a core program; the result has no functions.
Program inline_calls(const Program& core);

}  // namespace bddppl
