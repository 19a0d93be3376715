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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bddppl/ast.hpp"

namespace bddppl {

struct BifVariable {
  std::string name;
  std::vector<std::string> states;
};

/// A discrete Bayesian network. CPT rows are indexed by the parent states in
/// mixed radix, first parent most significant.
struct BayesNet {
  std::string name;
  std::vector<BifVariable> variables;
  std::vector<std::vector<std::size_t>> parents;
  std::vector<std::vector<std::vector<double>>> cpts;

  std::optional<std::size_t> index_of(const std::string& name) const;
  /// Throws CyclicNetwork.
  std::vector<std::size_t> topological_order() const;
  /// Sum over CPT rows of (states - 1).
  std::size_t free_parameter_count() const;
  std::size_t row_count(std::size_t var) const;
};

inline constexpr double kCptRowTolerance = 1e-6;

/// Parses the supported subset of the Bayesian Interchange Format:
///
///   network <name> { }
///   variable <name> { type discrete [ <n> ] { <state>, ... }; }
///   probability ( <var> ) { table <p>, ...; }
///   probability ( <var> | <parent>, ... ) { (<state>, ...) <p>, ...; ... }
///
/// `property` entries, `default` rows, non-discrete variables and `table`
/// rows for variables with parents are rejected. Throws BifParse,
/// CyclicNetwork or MalformedCpt.
BayesNet parse_bif(std::string_view text, const std::string& file = "<bif>");

/// A program whose value is the query variable's one-hot integer. Variables
/// are bound in topological order; roots are `discrete`, children dispatch
/// on their parents' states with nested conditionals. Throws
/// UnknownQueryVariable.
Program net_to_program(const BayesNet& net, const std::string& query);

/// Identifier used for a network variable in emitted programs.
std::string program_name(const BayesNet& net, std::size_t var);

}  // namespace bddppl
