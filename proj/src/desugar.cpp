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

#include "bddppl/desugar.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "bddppl/typecheck.hpp"

namespace bddppl {

namespace {

// Effect-free and cheap to duplicate. Bounded depth keeps the check O(1).
bool is_pure(const Expr& e, int depth = 6) {
  if (depth == 0) return false;
  switch (e.kind) {
    case ExprKind::BoolLit:
    case ExprKind::Ident:
      return true;
    case ExprKind::Fst:
    case ExprKind::Snd:
    case ExprKind::Not:
      return is_pure(e.kid(0), depth - 1);
    case ExprKind::Tuple:
    case ExprKind::And:
    case ExprKind::Or:
      return is_pure(e.kid(0), depth - 1) && is_pure(e.kid(1), depth - 1);
    case ExprKind::Ite:
      return is_pure(e.kid(0), depth - 1) && is_pure(e.kid(1), depth - 1) &&
             is_pure(e.kid(2), depth - 1);
    default:
      return false;
  }
}

bool is_lit(const Expr& e, bool v) { return e.kind == ExprKind::BoolLit && e.bool_value == v; }

// Binds `e` to a fresh name unless it is pure. `lets` collects the bindings in
// evaluation order.
ExprPtr share(ExprPtr e, std::vector<std::pair<std::string, ExprPtr>>& lets, NameSupply& names) {
  if (is_pure(*e)) return e;
  std::string n = names.fresh();
  lets.emplace_back(n, std::move(e));
  return mk_ident(lets.back().first);
}

ExprPtr wrap(std::vector<std::pair<std::string, ExprPtr>> lets, ExprPtr body) {
  for (auto it = lets.rbegin(); it != lets.rend(); ++it) body = mk_let(it->first, it->second, body);
  return body;
}

// Builders over already-lowered operands. Evaluation is strict: observes in
// either operand always apply.
ExprPtr build_not(ExprPtr a) {
  if (a->kind == ExprKind::BoolLit) return mk_bool(!a->bool_value);
  return mk_ite(std::move(a), mk_bool(false), mk_bool(true));
}

ExprPtr build_and(ExprPtr a, ExprPtr b, NameSupply& names) {
  if (is_pure(*a) && is_pure(*b)) {
    if (is_lit(*a, false) || is_lit(*b, false)) return mk_bool(false);
    if (is_lit(*a, true)) return b;
    if (is_lit(*b, true)) return a;
    return mk_ite(std::move(a), std::move(b), mk_bool(false));
  }
  std::vector<std::pair<std::string, ExprPtr>> lets;
  if (!is_pure(*b)) a = share(std::move(a), lets, names);
  b = share(std::move(b), lets, names);
  return wrap(std::move(lets), mk_ite(std::move(a), std::move(b), mk_bool(false)));
}

ExprPtr build_or(ExprPtr a, ExprPtr b, NameSupply& names) {
  if (is_pure(*a) && is_pure(*b)) {
    if (is_lit(*a, true) || is_lit(*b, true)) return mk_bool(true);
    if (is_lit(*a, false)) return b;
    if (is_lit(*b, false)) return a;
    return mk_ite(std::move(a), mk_bool(true), std::move(b));
  }
  std::vector<std::pair<std::string, ExprPtr>> lets;
  if (!is_pure(*b)) a = share(std::move(a), lets, names);
  b = share(std::move(b), lets, names);
  return wrap(std::move(lets), mk_ite(std::move(a), mk_bool(true), std::move(b)));
}

ExprPtr build_bool_eq(ExprPtr a, ExprPtr b, NameSupply& names) {
  std::vector<std::pair<std::string, ExprPtr>> lets;
  if (!is_pure(*b)) a = share(std::move(a), lets, names);
  b = share(std::move(b), lets, names);
  if (b->kind == ExprKind::BoolLit) {
    return wrap(std::move(lets), b->bool_value ? a : build_not(a));
  }
  return wrap(std::move(lets), mk_ite(std::move(a), b, build_not(b)));
}

// Leaf i of a right-nested one-hot tuple with n leaves.
ExprPtr leaf(const ExprPtr& x, int i, int n) {
  if (n == 1) return x;
  if (x->kind == ExprKind::Tuple) {
    return i == 0 ? x->kids[0] : leaf(x->kids[1], i - 1, n - 1);
  }
  if (i == 0) return mk_fst(x);
  return leaf(mk_snd(x), i - 1, n - 1);
}

ExprPtr right_nested(std::vector<ExprPtr> items) {
  ExprPtr out = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) out = mk_tuple(items[i], out);
  return out;
}

ExprPtr int_literal(int n, int k) {
  std::vector<ExprPtr> bits;
  for (int i = 0; i < n; ++i) bits.push_back(mk_bool(i == k));
  return right_nested(std::move(bits));
}

class Lowerer {
 public:
  explicit Lowerer(NameSupply& names) : names_(names) {}

  ExprPtr lower(const Expr& e) {
    std::vector<ExprPtr> kids;
    kids.reserve(e.kids.size());
    switch (e.kind) {
      case ExprKind::BoolLit:
      case ExprKind::Ident:
      case ExprKind::Flip:
        return with_type(e, {}, nullptr);
      case ExprKind::Fst:
      case ExprKind::Snd:
      case ExprKind::Tuple:
      case ExprKind::Let:
      case ExprKind::Ite:
      case ExprKind::Observe:
        for (const auto& k : e.kids) kids.push_back(lower(*k));
        return with_type(e, std::move(kids), nullptr);
      case ExprKind::Call: {
        for (const auto& k : e.kids) kids.push_back(lower(*k));
        if (kids.size() == 1) return with_type(e, std::move(kids), nullptr);
        return with_type(e, {right_nested(std::move(kids))}, nullptr);
      }
      case ExprKind::And:
        return build_and(lower(e.kid(0)), lower(e.kid(1)), names_);
      case ExprKind::Or:
        return build_or(lower(e.kid(0)), lower(e.kid(1)), names_);
      case ExprKind::Not:
        return build_not(lower(e.kid(0)));
      case ExprKind::Discrete:
        return lower(*desugar_discrete(e.params, names_));
      case ExprKind::Iterate:
        return desugar_iterate(e.name, lower(e.kid(0)), e.int_value);
      case ExprKind::Eq:
      case ExprKind::IntLit:
      case ExprKind::IntAdd:
      case ExprKind::IntMul:
        for (const auto& k : e.kids) kids.push_back(lower(*k));
        return desugar_int_op(e, std::move(kids), names_);
    }
    throw InternalError("unhandled expression kind in desugar");
  }

 private:
  NameSupply& names_;
};

}  // namespace

ExprPtr desugar_discrete(const std::vector<double>& params, const std::vector<std::string>& names) {
  validate_discrete(params);
  const std::size_t n = params.size();
  if (names.size() != n) throw InternalError("desugar_discrete: wrong number of names");
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + params[i];

  std::vector<ExprPtr> defs;
  for (std::size_t i = 0; i < n; ++i) {
    ExprPtr none_before;
    for (std::size_t k = 0; k < i; ++k) {
      ExprPtr nk = mk_not(mk_ident(names[k]));
      none_before = none_before ? mk_and(none_before, nk) : nk;
    }
    if (i + 1 == n) {
      defs.push_back(none_before ? none_before : mk_bool(true));
      continue;
    }
    double theta = tail[i] > 0.0 ? std::clamp(params[i] / tail[i], 0.0, 1.0) : 0.0;
    ExprPtr coin = mk_flip(theta);
    defs.push_back(none_before ? mk_and(none_before, coin) : coin);
  }
  std::vector<ExprPtr> idents;
  for (const auto& nm : names) idents.push_back(mk_ident(nm));
  ExprPtr body = right_nested(std::move(idents));
  for (std::size_t i = n; i-- > 0;) body = mk_let(names[i], defs[i], body);
  return body;
}

ExprPtr desugar_discrete(const std::vector<double>& params, NameSupply& names) {
  std::vector<std::string> fresh;
  for (std::size_t i = 0; i < params.size(); ++i) fresh.push_back(names.fresh());
  return desugar_discrete(params, fresh);
}

ExprPtr desugar_iterate(const std::string& func, ExprPtr init, int count) {
  ExprPtr out = std::move(init);
  for (int i = 0; i < count; ++i) out = mk_call(func, {out});
  return out;
}

ExprPtr desugar_int_op(const Expr& typed, std::vector<ExprPtr> kids, NameSupply& names) {
  switch (typed.kind) {
    case ExprKind::IntLit:
      return int_literal(typed.int_size, typed.int_value);
    case ExprKind::Eq: {
      const TypePtr& t = typed.kid(0).type;
      if (!t) throw InternalError("desugar_int_op needs a typechecked expression");
      if (t->is_bool()) return build_bool_eq(kids[0], kids[1], names);
      const int n = t->size();
      std::vector<std::pair<std::string, ExprPtr>> lets;
      ExprPtr x = share(kids[0], lets, names);
      ExprPtr y = share(kids[1], lets, names);
      ExprPtr acc = mk_bool(false);
      for (int i = 0; i < n; ++i) {
        acc = build_or(acc, build_and(leaf(x, i, n), leaf(y, i, n), names), names);
      }
      return wrap(std::move(lets), acc);
    }
    case ExprKind::IntAdd:
    case ExprKind::IntMul: {
      const int n = typed.type->size();
      const bool add = typed.kind == ExprKind::IntAdd;
      std::vector<std::pair<std::string, ExprPtr>> lets;
      ExprPtr x = share(kids[0], lets, names);
      ExprPtr y = share(kids[1], lets, names);
      std::vector<ExprPtr> bits(n, mk_bool(false));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          int r = add ? (i + j) % n : (i * j) % n;
          bits[r] = build_or(bits[r], build_and(leaf(x, i, n), leaf(y, j, n), names), names);
        }
      }
      return wrap(std::move(lets), right_nested(std::move(bits)));
    }
    default:
      throw InternalError("desugar_int_op: not an integer operation");
  }
}

ExprPtr normalize_anf(const Expr& e, NameSupply& names) {
  auto hoist = [&](std::vector<std::pair<std::string, ExprPtr>>& lets, const Expr& k) -> ExprPtr {
    ExprPtr n = normalize_anf(k, names);
    if (is_atomic(*n)) return n;
    std::string nm = names.fresh();
    lets.emplace_back(nm, std::move(n));
    return mk_ident(nm);
  };
  std::vector<std::pair<std::string, ExprPtr>> lets;
  std::vector<ExprPtr> kids;
  switch (e.kind) {
    case ExprKind::Fst:
    case ExprKind::Snd:
    case ExprKind::Observe:
    case ExprKind::Tuple:
    case ExprKind::Call:
      for (const auto& k : e.kids) kids.push_back(hoist(lets, *k));
      break;
    case ExprKind::Ite:
      kids.push_back(hoist(lets, e.kid(0)));
      kids.push_back(normalize_anf(e.kid(1), names));
      kids.push_back(normalize_anf(e.kid(2), names));
      break;
    default:
      for (const auto& k : e.kids) kids.push_back(normalize_anf(*k, names));
      break;
  }
  return wrap(std::move(lets), with_kids(e, std::move(kids)));
}

Program desugar_program(const Program& typed) {
  NameSupply names("s");
  Lowerer lowerer(names);
  Program out;
  for (const FuncDef& f : typed.functions) {
    FuncDef g;
    g.name = f.name;
    g.span = f.span;
    g.return_type = lower_type(f.return_type);
    ExprPtr body = lowerer.lower(*f.body);
    if (f.params.size() == 1) {
      g.params.push_back({f.params[0].name, lower_type(f.params[0].type)});
    } else {
      std::vector<TypePtr> ts;
      for (const Param& p : f.params) ts.push_back(lower_type(p.type));
      TypePtr packed = ts.back();
      for (std::size_t i = ts.size() - 1; i-- > 0;) packed = Type::product(ts[i], packed);
      std::string formal = names.fresh();
      std::vector<std::pair<std::string, ExprPtr>> lets;
      std::string rest = formal;
      for (std::size_t i = 0; i < f.params.size(); ++i) {
        lets.emplace_back(f.params[i].name, mk_fst(mk_ident(rest)));
        if (i + 2 < f.params.size()) {
          std::string next = names.fresh();
          lets.emplace_back(next, mk_snd(mk_ident(rest)));
          rest = next;
        } else {
          lets.emplace_back(f.params[i + 1].name, mk_snd(mk_ident(rest)));
          break;
        }
      }
      body = wrap(std::move(lets), body);
      g.params.push_back({formal, packed});
    }
    g.body = std::move(body);
    out.functions.push_back(std::move(g));
  }
  out.main = lowerer.lower(*typed.main);
  return out;
}

LoweredProgram lower_program(const Program& parsed) {
  LoweredProgram out;
  out.surface = typecheck(parsed);
  out.surface_type = output_type(out.surface);
  Program core = desugar_program(out.surface);
  NameSupply names("a");
  for (FuncDef& f : core.functions) f.body = normalize_anf(*f.body, names);
  core.main = normalize_anf(*core.main, names);
  out.core = typecheck(core);
  out.core_type = output_type(out.core);
  if (!is_core_program(out.core)) throw InternalError("lowering produced a non-core program");
  return out;
}

Program inline_calls(const Program& core) {
  std::unordered_map<std::string, const FuncDef*> defs;
  std::unordered_map<std::string, ExprPtr> inlined;

  struct Rewriter {
    std::unordered_map<std::string, const FuncDef*>& defs;
    std::unordered_map<std::string, ExprPtr>& inlined;
    ExprPtr run(const Expr& e) {
      if (e.kind == ExprKind::Call) {
        const FuncDef* f = defs.at(e.name);
        return mk_let(f->params.at(0).name, with_kids(e.kid(0), e.kid(0).kids), inlined.at(e.name));
      }
      if (e.kids.empty()) return with_kids(e, {});
      std::vector<ExprPtr> kids;
      kids.reserve(e.kids.size());
      for (const auto& k : e.kids) kids.push_back(run(*k));
      return with_kids(e, std::move(kids));
    }
  } rw{defs, inlined};

  for (const FuncDef& f : core.functions) {
    inlined[f.name] = rw.run(*f.body);
    defs[f.name] = &f;
  }
  Program out;
  out.main = rw.run(*core.main);
  return typecheck(out);
}

}  // namespace bddppl
