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

#include "bddppl/ast.hpp"

namespace bddppl {

const char* expr_kind_name(ExprKind kind) {
  switch (kind) {
    case ExprKind::BoolLit: return "BoolLit";
    case ExprKind::Ident: return "Ident";
    case ExprKind::Fst: return "Fst";
    case ExprKind::Snd: return "Snd";
    case ExprKind::Tuple: return "Tuple";
    case ExprKind::Let: return "Let";
    case ExprKind::Flip: return "Flip";
    case ExprKind::Ite: return "Ite";
    case ExprKind::Observe: return "Observe";
    case ExprKind::Call: return "Call";
    case ExprKind::And: return "And";
    case ExprKind::Or: return "Or";
    case ExprKind::Not: return "Not";
    case ExprKind::Eq: return "Eq";
    case ExprKind::Discrete: return "Discrete";
    case ExprKind::IntLit: return "IntLit";
    case ExprKind::IntAdd: return "IntAdd";
    case ExprKind::IntMul: return "IntMul";
    case ExprKind::Iterate: return "Iterate";
  }
  return "?";
}

namespace {

std::shared_ptr<Expr> node(ExprKind kind, std::vector<ExprPtr> kids = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->kids = std::move(kids);
  return e;
}

}  // namespace

ExprPtr mk_bool(bool v) {
  auto e = node(ExprKind::BoolLit);
  e->bool_value = v;
  return e;
}

ExprPtr mk_ident(std::string name) {
  auto e = node(ExprKind::Ident);
  e->name = std::move(name);
  return e;
}

ExprPtr mk_fst(ExprPtr a) { return node(ExprKind::Fst, {std::move(a)}); }
ExprPtr mk_snd(ExprPtr a) { return node(ExprKind::Snd, {std::move(a)}); }

ExprPtr mk_tuple(ExprPtr a, ExprPtr b) {
  return node(ExprKind::Tuple, {std::move(a), std::move(b)});
}

ExprPtr mk_let(std::string name, ExprPtr bound, ExprPtr body) {
  auto e = node(ExprKind::Let, {std::move(bound), std::move(body)});
  e->name = std::move(name);
  return e;
}

ExprPtr mk_flip(double theta) {
  auto e = node(ExprKind::Flip);
  e->theta = theta;
  return e;
}

ExprPtr mk_ite(ExprPtr guard, ExprPtr then_e, ExprPtr else_e) {
  return node(ExprKind::Ite, {std::move(guard), std::move(then_e), std::move(else_e)});
}

ExprPtr mk_observe(ExprPtr a) { return node(ExprKind::Observe, {std::move(a)}); }

ExprPtr mk_call(std::string func, std::vector<ExprPtr> args) {
  auto e = node(ExprKind::Call, std::move(args));
  e->name = std::move(func);
  return e;
}

ExprPtr mk_and(ExprPtr a, ExprPtr b) { return node(ExprKind::And, {std::move(a), std::move(b)}); }
ExprPtr mk_or(ExprPtr a, ExprPtr b) { return node(ExprKind::Or, {std::move(a), std::move(b)}); }
ExprPtr mk_not(ExprPtr a) { return node(ExprKind::Not, {std::move(a)}); }
ExprPtr mk_eq(ExprPtr a, ExprPtr b) { return node(ExprKind::Eq, {std::move(a), std::move(b)}); }

ExprPtr mk_discrete(std::vector<double> params) {
  auto e = node(ExprKind::Discrete);
  e->params = std::move(params);
  return e;
}

ExprPtr mk_int(int size, int value) {
  auto e = node(ExprKind::IntLit);
  e->int_size = size;
  e->int_value = value;
  return e;
}

ExprPtr mk_int_add(ExprPtr a, ExprPtr b) {
  return node(ExprKind::IntAdd, {std::move(a), std::move(b)});
}

ExprPtr mk_int_mul(ExprPtr a, ExprPtr b) {
  return node(ExprKind::IntMul, {std::move(a), std::move(b)});
}

ExprPtr mk_iterate(std::string func, ExprPtr init, int count) {
  auto e = node(ExprKind::Iterate, {std::move(init)});
  e->name = std::move(func);
  e->int_value = count;
  return e;
}

ExprPtr with_kids(const Expr& e, std::vector<ExprPtr> kids) {
  auto copy = std::make_shared<Expr>(e);
  copy->kids = std::move(kids);
  return copy;
}

ExprPtr with_type(const Expr& e, std::vector<ExprPtr> kids, TypePtr type) {
  auto copy = std::make_shared<Expr>(e);
  copy->kids = std::move(kids);
  copy->type = std::move(type);
  return copy;
}

bool is_atomic(const Expr& e) {
  return e.kind == ExprKind::Ident || e.kind == ExprKind::BoolLit;
}

bool is_core_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::BoolLit:
    case ExprKind::Ident:
    case ExprKind::Flip:
      return true;
    case ExprKind::Fst:
    case ExprKind::Snd:
    case ExprKind::Observe:
      return is_atomic(e.kid(0));
    case ExprKind::Tuple:
      return is_atomic(e.kid(0)) && is_atomic(e.kid(1));
    case ExprKind::Call:
      return e.kids.size() == 1 && is_atomic(e.kid(0));
    case ExprKind::Let:
      return is_core_expr(e.kid(0)) && is_core_expr(e.kid(1));
    case ExprKind::Ite:
      return is_atomic(e.kid(0)) && is_core_expr(e.kid(1)) && is_core_expr(e.kid(2));
    default:
      return false;
  }
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  switch (a.kind) {
    case ExprKind::BoolLit:
      if (a.bool_value != b.bool_value) return false;
      break;
    case ExprKind::Ident:
    case ExprKind::Let:
    case ExprKind::Call:
      if (a.name != b.name) return false;
      break;
    case ExprKind::Flip:
      if (a.theta != b.theta) return false;
      break;
    case ExprKind::Discrete:
      if (a.params != b.params) return false;
      break;
    case ExprKind::IntLit:
      if (a.int_size != b.int_size || a.int_value != b.int_value) return false;
      break;
    case ExprKind::Iterate:
      if (a.name != b.name || a.int_value != b.int_value) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    if (!structurally_equal(*a.kids[i], *b.kids[i])) return false;
  }
  return true;
}

std::size_t expr_size(const Expr& e) {
  std::size_t n = 1;
  for (const auto& k : e.kids) n += expr_size(*k);
  return n;
}

const FuncDef* Program::find_function(const std::string& name) const {
  for (const auto& f : functions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const FuncDef& fa = a.functions[i];
    const FuncDef& fb = b.functions[i];
    if (fa.name != fb.name || fa.params.size() != fb.params.size()) return false;
    for (std::size_t j = 0; j < fa.params.size(); ++j) {
      if (fa.params[j].name != fb.params[j].name) return false;
      if (!same_type(fa.params[j].type, fb.params[j].type)) return false;
    }
    if (!same_type(fa.return_type, fb.return_type)) return false;
    if (!structurally_equal(*fa.body, *fb.body)) return false;
  }
  return structurally_equal(*a.main, *b.main);
}

bool is_core_program(const Program& p) {
  for (const auto& f : p.functions) {
    if (f.params.size() != 1 || !f.params[0].type->is_core()) return false;
    if (!f.return_type->is_core() || !is_core_expr(*f.body)) return false;
  }
  return is_core_expr(*p.main);
}

std::string NameSupply::fresh() {
  return std::string(kReservedPrefix) + tag_ + std::to_string(next_++);
}

}  // namespace bddppl
