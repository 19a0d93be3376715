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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bddppl/ast.hpp"
#include "bddppl/bif.hpp"

namespace bddppl::testing {

struct GenOptions {
  int max_depth = 3;
  int max_functions = 2;
  int max_flips = 12;        // after desugaring
  bool allow_ints = true;
  bool allow_observe = true;
};

/// A random well-typed surface program with functions, tuples, observes,
/// integers and every Boolean operator. Deterministic in `seed`; regenerates
/// internally until the desugared program has at most `max_flips` flips.
Program random_program(std::uint64_t seed, const GenOptions& options = {});

/// A random DAG of up to `max_vars` variables with 2 or 3 states each.
BayesNet random_network(std::uint64_t seed, int max_vars = 5);

/// Marginal of `query` by summing the joint table.
std::vector<double> joint_marginal(const BayesNet& net, std::size_t query);

}  // namespace bddppl::testing
