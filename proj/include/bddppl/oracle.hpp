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

#include <functional>
#include <map>
#include <string>

#include "bddppl/ast.hpp"
#include "bddppl/value.hpp"

namespace bddppl {

// Reference semantics by exhaustive enumeration. Everything here is
// exponential in the number of flips and intended for testing.

using Env = std::map<std::string, Value>;
/// Unnormalized output distribution of each function, per argument value.
using FuncTable = std::map<std::string, std::function<Distribution(const Value&)>>;

/// Denotational semantics of a core expression: the let rule sums over the
/// values of the bound expression.
Distribution eval_unnormalized(const Expr& e, const Env& env, const FuncTable& table);
/// Probability that every observe succeeds.
double accepting_semantics(const Expr& e, const Env& env, const FuncTable& table);
/// Unnormalized semantics divided by the accepting probability; all zero
/// when that probability is 0.
Distribution distributional_semantics(const Expr& e, const Env& env, const FuncTable& table);

Distribution normalize(const Distribution& d);

struct OracleResult {
  Distribution unnormalized;
  Distribution distribution;  // normalized
  double accepting = 0.0;
};

/// Builds the function table left to right (memoized per argument) and
/// evaluates main. Input must be a core program.
OracleResult eval_program(const Program& core);

inline constexpr int kOracleFlipLimit = 24;

/// Number of random choices in one execution, counting each call as a copy
/// of the callee and `discrete(n)` as n-1 flips.
double static_flip_count(const Program& program);

/// Enumerates every assignment to the random choices of a typechecked
/// program, surface or core. Sugar is executed directly: `discrete` is one
/// n-way choice and integers are one-hot tuples. Throws OracleTooLarge above
/// `kOracleFlipLimit` flips.
OracleResult enumerate_program(const Program& typed);

}  // namespace bddppl
