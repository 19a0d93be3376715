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

#include "bddppl/typecheck.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bddppl {

void validate_discrete(const std::vector<double>& params, const std::optional<SourceSpan>& span) {
  if (params.empty()) throw Error(ErrorKind::BadDistribution, "discrete needs at least one parameter", span);
  double total = 0.0;
  for (double p : params) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::BadDistribution, "discrete parameter " + std::to_string(p) + " is negative",
                  span);
    }
    total += p;
  }
  if (std::fabs(total - 1.0) > kDiscreteSumTolerance) {
    throw Error(ErrorKind::BadDistribution,
                "discrete parameters sum to " + std::to_string(total) + ", expected 1", span);
  }
}

namespace {

std::optional<SourceSpan> where(const Expr& e) {
  if (e.span.end_offset == 0 && e.span.begin_offset == 0 && e.span.file.empty()) return std::nullopt;
  return e.span;
}

[[noreturn]] void mismatch(const Expr& at, const TypePtr& expected, const TypePtr& found,
                           const std::string& what) {
  throw Error(ErrorKind::TypeMismatch,
              what + ": expected " + expected->to_string() + ", found " + found->to_string(), where(at));
}

class Checker {
 public:
  explicit Checker(const Program& p) : program_(p) {}

  Program run() {
    Program out;
    for (std::size_t i = 0; i < program_.functions.size(); ++i) {
      const FuncDef& f = program_.functions[i];
      if (index_.count(f.name)) {
        throw Error(ErrorKind::DuplicateFunction, "function '" + f.name + "' is defined twice", f.span);
      }
      if (f.params.empty()) {
        throw Error(ErrorKind::TypeMismatch, "function '" + f.name + "' has no parameters", f.span);
      }
      current_ = i;
      scope_.clear();
      for (const Param& p : f.params) scope_.emplace_back(p.name, p.type);
      FuncDef typed = f;
      typed.body = check(*f.body);
      if (!same_type(typed.body->type, f.return_type)) {
        mismatch(*f.body, f.return_type, typed.body->type, "body of '" + f.name + "'");
      }
      index_[f.name] = i;
      out.functions.push_back(std::move(typed));
    }
    current_ = program_.functions.size();
    scope_.clear();
    out.main = check(*program_.main);
    return out;
  }

 private:
  TypePtr lookup(const Expr& e) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == e.name) return it->second;
    }
    throw Error(ErrorKind::UnboundIdentifier, "unbound identifier '" + e.name + "'", where(e));
  }

  const FuncDef& callee(const Expr& e) const {
    auto it = index_.find(e.name);
    if (it != index_.end() && it->second < current_) return program_.functions[it->second];
    for (std::size_t j = 0; j < program_.functions.size(); ++j) {
      if (program_.functions[j].name == e.name) {
        throw Error(ErrorKind::RecursiveOrForwardCall,
                    "call to '" + e.name + "' before its definition is complete", where(e));
      }
    }
    throw Error(ErrorKind::UnknownFunction, "unknown function '" + e.name + "'", where(e));
  }

  static void expect_bool(const Expr& at, const ExprPtr& typed, const std::string& what) {
    if (!typed->type->is_bool()) mismatch(at, Type::boolean(), typed->type, what);
  }

  ExprPtr check(const Expr& e) {
    std::vector<ExprPtr> kids;
    auto sub = [&](std::size_t i) {
      kids.push_back(check(e.kid(i)));
      return kids.back();
    };
    auto done = [&](TypePtr t) { return with_type(e, std::move(kids), std::move(t)); };

    switch (e.kind) {
      case ExprKind::BoolLit:
        return done(Type::boolean());
      case ExprKind::Ident:
        return done(lookup(e));
      case ExprKind::Fst:
      case ExprKind::Snd: {
        ExprPtr a = sub(0);
        if (!a->type->is_prod()) {
          throw Error(ErrorKind::TypeMismatch,
                      std::string(e.kind == ExprKind::Fst ? "fst" : "snd") +
                          ": expected a tuple, found " + a->type->to_string(),
                      where(e));
        }
        return done(e.kind == ExprKind::Fst ? a->type->left() : a->type->right());
      }
      case ExprKind::Tuple: {
        ExprPtr a = sub(0);
        ExprPtr b = sub(1);
        return done(Type::product(a->type, b->type));
      }
      case ExprKind::Let: {
        ExprPtr bound = sub(0);
        scope_.emplace_back(e.name, bound->type);
        ExprPtr body = sub(1);
        scope_.pop_back();
        return done(body->type);
      }
      case ExprKind::Flip:
        if (!(e.theta >= 0.0 && e.theta <= 1.0)) {
          throw Error(ErrorKind::BadDistribution, "flip probability outside [0, 1]", where(e));
        }
        return done(Type::boolean());
      case ExprKind::Ite: {
        ExprPtr g = sub(0);
        expect_bool(e.kid(0), g, "if guard");
        ExprPtr t = sub(1);
        ExprPtr f = sub(2);
        if (!same_type(t->type, f->type)) mismatch(e.kid(2), t->type, f->type, "else branch");
        return done(t->type);
      }
      case ExprKind::Observe: {
        ExprPtr a = sub(0);
        if (!a->type->is_bool()) {
          throw Error(ErrorKind::ObserveNonBool,
                      "observe needs a bool, found " + a->type->to_string(), where(e));
        }
        return done(Type::boolean());
      }
      case ExprKind::Call: {
        const FuncDef& f = callee(e);
        if (f.params.size() != e.kids.size()) {
          throw Error(ErrorKind::TypeMismatch,
                      "'" + f.name + "' takes " + std::to_string(f.params.size()) +
                          " argument(s), given " + std::to_string(e.kids.size()),
                      where(e));
        }
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
          ExprPtr a = sub(i);
          if (!same_type(a->type, f.params[i].type)) {
            mismatch(e.kid(i), f.params[i].type, a->type, "argument of '" + f.name + "'");
          }
        }
        return done(f.return_type);
      }
      case ExprKind::And:
      case ExprKind::Or: {
        expect_bool(e.kid(0), sub(0), "operand");
        expect_bool(e.kid(1), sub(1), "operand");
        return done(Type::boolean());
      }
      case ExprKind::Not:
        expect_bool(e.kid(0), sub(0), "operand");
        return done(Type::boolean());
      case ExprKind::Eq: {
        ExprPtr a = sub(0);
        ExprPtr b = sub(1);
        if (a->type->is_int() && b->type->is_int() && a->type->size() != b->type->size()) {
          throw Error(ErrorKind::SizeMismatch,
                      "== on int(" + std::to_string(a->type->size()) + ") and int(" +
                          std::to_string(b->type->size()) + ")",
                      where(e));
        }
        if (!(a->type->is_bool() || a->type->is_int())) {
          throw Error(ErrorKind::TypeMismatch, "== needs bool or int operands, found " +
                                                   a->type->to_string(), where(e));
        }
        if (!same_type(a->type, b->type)) mismatch(e.kid(1), a->type, b->type, "right operand of ==");
        return done(Type::boolean());
      }
      case ExprKind::Discrete:
        validate_discrete(e.params, where(e));
        return done(Type::integer(static_cast<int>(e.params.size())));
      case ExprKind::IntLit:
        if (e.int_size < 1 || e.int_value < 0 || e.int_value >= e.int_size) {
          throw Error(ErrorKind::TypeMismatch, "integer literal out of range", where(e));
        }
        return done(Type::integer(e.int_size));
      case ExprKind::IntAdd:
      case ExprKind::IntMul: {
        ExprPtr a = sub(0);
        ExprPtr b = sub(1);
        if (!a->type->is_int()) mismatch(e.kid(0), Type::integer(b->type->is_int() ? b->type->size() : 1), a->type, "arithmetic operand");
        if (!b->type->is_int()) mismatch(e.kid(1), a->type, b->type, "arithmetic operand");
        if (a->type->size() != b->type->size()) {
          throw Error(ErrorKind::SizeMismatch,
                      "arithmetic on int(" + std::to_string(a->type->size()) + ") and int(" +
                          std::to_string(b->type->size()) + ")",
                      where(e));
        }
        return done(a->type);
      }
      case ExprKind::Iterate: {
        const FuncDef& f = callee(e);
        if (f.params.size() != 1 || !same_type(f.params[0].type, f.return_type)) {
          throw Error(ErrorKind::TypeMismatch,
                      "iterate needs a function of type t -> t, '" + f.name + "' is not", where(e));
        }
        if (e.int_value < 0) throw Error(ErrorKind::TypeMismatch, "iterate count must be >= 0", where(e));
        ExprPtr init = sub(0);
        if (!same_type(init->type, f.return_type)) mismatch(e.kid(0), f.return_type, init->type, "iterate init");
        return done(f.return_type);
      }
    }
    throw InternalError("unhandled expression kind in typecheck");
  }

  const Program& program_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t current_ = 0;
  std::vector<std::pair<std::string, TypePtr>> scope_;
};

}  // namespace

Program typecheck(const Program& program) { return Checker(program).run(); }

TypePtr output_type(const Program& typed) {
  if (!typed.main || !typed.main->type) throw InternalError("program is not typechecked");
  return typed.main->type;
}

}  // namespace bddppl
