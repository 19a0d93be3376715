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

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bddppl/ast.hpp"
#include "bddppl/bdd.hpp"
#include "bddppl/value.hpp"

namespace bddppl {

/// One formula per Bool leaf of a type, in the shape of the type.
class CompiledTuple {
 public:
  CompiledTuple() = default;
  static CompiledTuple leaf(NodeRef f);
  static CompiledTuple pair(CompiledTuple left, CompiledTuple right);

  bool is_leaf() const noexcept { return !children_; }
  NodeRef node() const;
  const CompiledTuple& left() const;
  const CompiledTuple& right() const;

  /// Leaf formulas, left to right.
  std::vector<NodeRef> leaves() const;
  /// Same shape as `shape`, leaves taken from `nodes` in order.
  static CompiledTuple rebuild(const CompiledTuple& shape, const std::vector<NodeRef>& nodes);

 private:
  NodeRef node_ = BddManager::kFalse;
  std::shared_ptr<const std::pair<CompiledTuple, CompiledTuple>> children_;
};

/// Unnormalized formula, accepting formula and flip weights.
struct CompiledExpr {
  CompiledTuple formula;
  NodeRef accepting = BddManager::kTrue;
  WeightFn weights;
};

struct CompiledFunction {
  std::string formal;
  CompiledTuple arg;          // Free variables standing for the formal
  CompiledExpr body;          // weights hold the body's own flips
  std::vector<VarId> flips;   // flips the body depends on, by level
};

/// Compilation state for one manager.
struct CompileCtx {
  explicit CompileCtx(BddManager& m) : mgr(m) {}

  BddManager& mgr;
  std::vector<std::pair<std::string, CompiledTuple>> env;  // innermost last
  std::map<std::string, CompiledFunction> funcs;
  WeightFn weights;  // flips allocated since the last function boundary
  std::size_t flips_allocated = 0;

  const CompiledTuple& lookup(const std::string& name) const;
  /// Fresh flip variable named f1, f2, ... in allocation order.
  NodeRef fresh_flip(double theta);
};

/// Fresh Free variables for a value of type `ty`, named name, name_l, name_r,
/// name_l_r and so on.
CompiledTuple form(BddManager& mgr, const std::string& name, const TypePtr& ty);

CompiledTuple broadcast_and(BddManager& mgr, NodeRef g, const CompiledTuple& t);
CompiledTuple pointwise_or(BddManager& mgr, const CompiledTuple& a, const CompiledTuple& b);
/// Conjunction of the leafwise equivalences. Throws ShapeMismatch.
NodeRef pointwise_iff(BddManager& mgr, const CompiledTuple& a, const CompiledTuple& b);
/// Formula true exactly when the tuple evaluates to `v`.
NodeRef pointwise_iff(BddManager& mgr, const CompiledTuple& a, const Value& v);

/// Compiles a typechecked core expression under `ctx.env`. New flip weights
/// are added to `ctx.weights`; the returned weights are empty.
CompiledExpr compile_expr(CompileCtx& ctx, const Expr& e);
/// Compiles the body once over `form` of its formal and registers it.
const CompiledFunction& compile_function(CompileCtx& ctx, const FuncDef& f);
/// Instantiates a compiled function: its flips are replaced by fresh ones and
/// its formal by `arg`, by one simultaneous composition.
CompiledExpr apply_call(CompileCtx& ctx, const std::string& func, const CompiledTuple& arg);

enum class CompileMode { Modular, Inline };

const char* compile_mode_name(CompileMode mode);

struct CompiledProgram {
  std::unique_ptr<BddManager> manager;
  CompiledExpr expr;  // weights cover every flip of main
  std::vector<std::string> flip_names;
};

/// Compiles a typechecked core program in a fresh manager.
CompiledProgram compile_program(const Program& core, CompileMode mode, BddOptions options = {});

/// Roots of the formula leaves followed by the accepting formula.
std::vector<NodeRef> roots_of(const CompiledExpr& c);

}  // namespace bddppl
