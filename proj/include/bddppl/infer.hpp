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
#include <utility>
#include <vector>

#include "bddppl/bdd.hpp"
#include "bddppl/compiler.hpp"
#include "bddppl/value.hpp"

namespace bddppl {

inline constexpr int kDefaultMaxLeaves = 20;

struct Marginal {
  std::string path;  // dotted l/r path from the root; empty for a bare Bool
  double probability = 0.0;
};

/// Queries over one compiled expression. Queries build scaffolding nodes in
/// the manager, so calls must be serialized.
class Inference {
 public:
  /// Throws UnboundFreeVariable if a formula depends on a Free variable.
  Inference(BddManager& mgr, const CompiledExpr& expr);

  double accepting_probability();
  /// Normalized probability that the output equals `v`; 0 when the accepting
  /// probability is 0. Throws ShapeMismatch.
  double prob_of_value(const Value& v);
  /// One entry per inhabitant of `type` (a surface type; integers range over
  /// their one-hot values). Throws OutputTooWide.
  Distribution full_distribution(const TypePtr& type, int max_leaves = kDefaultMaxLeaves);
  /// Probability that each Bool leaf of the output is true.
  std::vector<Marginal> marginals();

  std::size_t wmc_calls() const noexcept { return wmc_calls_; }

 private:
  double count(NodeRef f);

  BddManager& mgr_;
  const CompiledExpr& expr_;
  std::optional<double> accepting_;
  std::size_t wmc_calls_ = 0;
};

}  // namespace bddppl
