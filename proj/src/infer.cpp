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

#include "bddppl/infer.hpp"

#include "bddppl/errors.hpp"

namespace bddppl {

namespace {

void leaf_paths(const CompiledTuple& t, const std::string& prefix,
                std::vector<std::pair<std::string, NodeRef>>& out) {
  if (t.is_leaf()) {
    out.emplace_back(prefix, t.node());
    return;
  }
  leaf_paths(t.left(), prefix.empty() ? "l" : prefix + ".l", out);
  leaf_paths(t.right(), prefix.empty() ? "r" : prefix + ".r", out);
}

}  // namespace

Inference::Inference(BddManager& mgr, const CompiledExpr& expr) : mgr_(mgr), expr_(expr) {
  for (NodeRef r : roots_of(expr)) {
    for (VarId v : mgr.support(r)) {
      if (mgr.label(v).kind == VarLabel::Kind::Free) {
        throw Error(ErrorKind::UnboundFreeVariable,
                    "formula depends on unbound variable '" + mgr.label(v).name + "'");
      }
    }
  }
}

double Inference::count(NodeRef f) {
  ++wmc_calls_;
  return mgr_.wmc(f, expr_.weights);
}

double Inference::accepting_probability() {
  if (!accepting_) accepting_ = count(expr_.accepting);
  return *accepting_;
}

double Inference::prob_of_value(const Value& v) {
  double z = accepting_probability();
  NodeRef q = mgr_.conjoin(pointwise_iff(mgr_, expr_.formula, v), expr_.accepting);
  double m = count(q);
  return z == 0.0 ? 0.0 : m / z;
}

Distribution Inference::full_distribution(const TypePtr& type, int max_leaves) {
  Distribution d;
  for (const Value& v : inhabitants(type, max_leaves)) d[v] = prob_of_value(v);
  return d;
}

std::vector<Marginal> Inference::marginals() {
  double z = accepting_probability();
  std::vector<std::pair<std::string, NodeRef>> leaves;
  leaf_paths(expr_.formula, "", leaves);
  std::vector<Marginal> out;
  for (const auto& [path, f] : leaves) {
    double m = count(mgr_.conjoin(f, expr_.accepting));
    out.push_back({path, z == 0.0 ? 0.0 : m / z});
  }
  return out;
}

}  // namespace bddppl
