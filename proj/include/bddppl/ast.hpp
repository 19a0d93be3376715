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

#include <memory>
#include <string>
#include <vector>

#include "bddppl/errors.hpp"
#include "bddppl/types.hpp"

namespace bddppl {

// Expression trees are immutable and shared. The surface language and the
// core language use the same node type; the core is the subset checked by
// `is_core_expr`.

enum class ExprKind {
  // core
  BoolLit,
  Ident,
  Fst,
  Snd,
  Tuple,
  Let,
  Flip,
  Ite,
  Observe,
  Call,
  // surface sugar
  And,
  Or,
  Not,
  Eq,
  Discrete,
  IntLit,
  IntAdd,
  IntMul,
  Iterate,
};

const char* expr_kind_name(ExprKind kind);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::BoolLit;
  SourceSpan span;

  bool bool_value = false;       // BoolLit
  std::string name;              // Ident, Let binder, Call/Iterate callee
  double theta = 0.0;            // Flip
  std::vector<double> params;    // Discrete
  int int_size = 0;              // IntLit
  int int_value = 0;             // IntLit value, Iterate count
  std::vector<ExprPtr> kids;     // operands, in evaluation order

  TypePtr type;                  // filled in by typecheck

  const Expr& kid(std::size_t i) const { return *kids.at(i); }
};

// Constructors. Spans default to empty.
ExprPtr mk_bool(bool v);
ExprPtr mk_ident(std::string name);
ExprPtr mk_fst(ExprPtr e);
ExprPtr mk_snd(ExprPtr e);
ExprPtr mk_tuple(ExprPtr a, ExprPtr b);
ExprPtr mk_let(std::string name, ExprPtr bound, ExprPtr body);
ExprPtr mk_flip(double theta);
ExprPtr mk_ite(ExprPtr guard, ExprPtr then_e, ExprPtr else_e);
ExprPtr mk_observe(ExprPtr e);
ExprPtr mk_call(std::string func, std::vector<ExprPtr> args);
ExprPtr mk_and(ExprPtr a, ExprPtr b);
ExprPtr mk_or(ExprPtr a, ExprPtr b);
ExprPtr mk_not(ExprPtr a);
ExprPtr mk_eq(ExprPtr a, ExprPtr b);
ExprPtr mk_discrete(std::vector<double> params);
ExprPtr mk_int(int size, int value);
ExprPtr mk_int_add(ExprPtr a, ExprPtr b);
ExprPtr mk_int_mul(ExprPtr a, ExprPtr b);
ExprPtr mk_iterate(std::string func, ExprPtr init, int count);

/// Shallow copy of `e` with new children.
ExprPtr with_kids(const Expr& e, std::vector<ExprPtr> kids);
/// Shallow copy of `e` with a type annotation.
ExprPtr with_type(const Expr& e, std::vector<ExprPtr> kids, TypePtr type);

/// Atomic expressions: identifiers and Boolean literals.
bool is_atomic(const Expr& e);

/// True if `e` uses only core constructors with atomic arguments in every
/// atomic position (A-normal form).
bool is_core_expr(const Expr& e);

/// Structural equality ignoring spans and type annotations. Probabilities are
/// compared exactly.
bool structurally_equal(const Expr& a, const Expr& b);

/// Number of nodes in the tree.
std::size_t expr_size(const Expr& e);

struct Param {
  std::string name;
  TypePtr type;
};

struct FuncDef {
  std::string name;
  std::vector<Param> params;  // exactly one after desugaring
  TypePtr return_type;
  ExprPtr body;
  SourceSpan span;
};

/// A sequence of non-recursive functions followed by the main expression.
struct Program {
  std::vector<FuncDef> functions;
  ExprPtr main;

  const FuncDef* find_function(const std::string& name) const;
};

bool structurally_equal(const Program& a, const Program& b);
bool is_core_program(const Program& p);

/// Names beginning with this prefix are reserved for compiler temporaries and
/// rejected by the lexer.
inline constexpr const char* kReservedPrefix = "__";

/// Generates fresh, capture-free temporary names.
class NameSupply {
 public:
  explicit NameSupply(std::string tag = "t") : tag_(std::move(tag)) {}
  std::string fresh();

 private:
  std::string tag_;
  unsigned next_ = 0;
};

}  // namespace bddppl
