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

#include "bddppl/compiler.hpp"

#include <algorithm>
#include <unordered_map>

#include "bddppl/desugar.hpp"
#include "bddppl/errors.hpp"

namespace bddppl {

CompiledTuple CompiledTuple::leaf(NodeRef f) {
  CompiledTuple t;
  t.node_ = f;
  return t;
}

CompiledTuple CompiledTuple::pair(CompiledTuple left, CompiledTuple right) {
  CompiledTuple t;
  t.children_ =
      std::make_shared<const std::pair<CompiledTuple, CompiledTuple>>(std::move(left), std::move(right));
  return t;
}

NodeRef CompiledTuple::node() const {
  if (!is_leaf()) throw Error(ErrorKind::ShapeMismatch, "expected a Boolean, found a tuple");
  return node_;
}

const CompiledTuple& CompiledTuple::left() const {
  if (is_leaf()) throw Error(ErrorKind::ShapeMismatch, "expected a tuple, found a Boolean");
  return children_->first;
}

const CompiledTuple& CompiledTuple::right() const {
  if (is_leaf()) throw Error(ErrorKind::ShapeMismatch, "expected a tuple, found a Boolean");
  return children_->second;
}

namespace {

void collect_leaves(const CompiledTuple& t, std::vector<NodeRef>& out) {
  if (t.is_leaf()) {
    out.push_back(t.node());
    return;
  }
  collect_leaves(t.left(), out);
  collect_leaves(t.right(), out);
}

CompiledTuple rebuild_from(const CompiledTuple& shape, const std::vector<NodeRef>& nodes, std::size_t& pos) {
  if (shape.is_leaf()) return CompiledTuple::leaf(nodes.at(pos++));
  CompiledTuple l = rebuild_from(shape.left(), nodes, pos);
  CompiledTuple r = rebuild_from(shape.right(), nodes, pos);
  return CompiledTuple::pair(std::move(l), std::move(r));
}

template <typename F>
CompiledTuple map_leaves(const CompiledTuple& t, F&& f) {
  if (t.is_leaf()) return CompiledTuple::leaf(f(t.node()));
  CompiledTuple l = map_leaves(t.left(), f);
  CompiledTuple r = map_leaves(t.right(), f);
  return CompiledTuple::pair(std::move(l), std::move(r));
}

template <typename F>
CompiledTuple zip_leaves(const CompiledTuple& a, const CompiledTuple& b, F&& f) {
  if (a.is_leaf() != b.is_leaf()) throw Error(ErrorKind::ShapeMismatch, "tuple shapes differ");
  if (a.is_leaf()) return CompiledTuple::leaf(f(a.node(), b.node()));
  CompiledTuple l = zip_leaves(a.left(), b.left(), f);
  CompiledTuple r = zip_leaves(a.right(), b.right(), f);
  return CompiledTuple::pair(std::move(l), std::move(r));
}

}  // namespace

std::vector<NodeRef> CompiledTuple::leaves() const {
  std::vector<NodeRef> out;
  collect_leaves(*this, out);
  return out;
}

CompiledTuple CompiledTuple::rebuild(const CompiledTuple& shape, const std::vector<NodeRef>& nodes) {
  std::size_t pos = 0;
  CompiledTuple t = rebuild_from(shape, nodes, pos);
  if (pos != nodes.size()) throw InternalError("rebuild: leftover leaves");
  return t;
}

const CompiledTuple& CompileCtx::lookup(const std::string& name) const {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == name) return it->second;
  }
  throw Error(ErrorKind::UnboundIdentifier, "unbound identifier '" + name + "' during compilation");
}

NodeRef CompileCtx::fresh_flip(double theta) {
  std::string name = "f" + std::to_string(++flips_allocated);
  VarId v = mgr.new_var(VarLabel::flip(std::move(name), theta));
  weights.set(v, {theta, 1.0 - theta});
  return mgr.var_node(v);
}

CompiledTuple form(BddManager& mgr, const std::string& name, const TypePtr& ty) {
  if (ty->is_bool()) return CompiledTuple::leaf(mgr.make_var(VarLabel::free(name)));
  if (ty->is_int()) return form(mgr, name, lower_type(ty));
  CompiledTuple l = form(mgr, name + "_l", ty->left());
  CompiledTuple r = form(mgr, name + "_r", ty->right());
  return CompiledTuple::pair(std::move(l), std::move(r));
}

CompiledTuple broadcast_and(BddManager& mgr, NodeRef g, const CompiledTuple& t) {
  return map_leaves(t, [&](NodeRef f) { return mgr.conjoin(g, f); });
}

CompiledTuple pointwise_or(BddManager& mgr, const CompiledTuple& a, const CompiledTuple& b) {
  return zip_leaves(a, b, [&](NodeRef x, NodeRef y) { return mgr.disjoin(x, y); });
}

NodeRef pointwise_iff(BddManager& mgr, const CompiledTuple& a, const CompiledTuple& b) {
  if (a.is_leaf() != b.is_leaf()) throw Error(ErrorKind::ShapeMismatch, "tuple shapes differ");
  if (a.is_leaf()) return mgr.iff(a.node(), b.node());
  NodeRef l = pointwise_iff(mgr, a.left(), b.left());
  if (l == BddManager::kFalse) return l;
  return mgr.conjoin(l, pointwise_iff(mgr, a.right(), b.right()));
}

NodeRef pointwise_iff(BddManager& mgr, const CompiledTuple& a, const Value& v) {
  if (a.is_leaf() != v.is_bool()) {
    throw Error(ErrorKind::ShapeMismatch, "value " + v.to_string() + " does not match the output shape");
  }
  if (a.is_leaf()) return v.as_bool() ? a.node() : mgr.negate(a.node());
  NodeRef l = pointwise_iff(mgr, a.left(), v.left());
  if (l == BddManager::kFalse) return l;
  return mgr.conjoin(l, pointwise_iff(mgr, a.right(), v.right()));
}

namespace {

CompiledTuple atom(CompileCtx& ctx, const Expr& e) {
  if (e.kind == ExprKind::BoolLit) return CompiledTuple::leaf(ctx.mgr.constant(e.bool_value));
  if (e.kind == ExprKind::Ident) return ctx.lookup(e.name);
  throw InternalError(std::string("compiler: expected an atomic expression, found ") +
                      expr_kind_name(e.kind));
}

CompiledExpr plain(CompiledTuple t) {
  CompiledExpr c;
  c.formula = std::move(t);
  return c;
}

}  // namespace

CompiledExpr compile_expr(CompileCtx& ctx, const Expr& e) {
  BddManager& mgr = ctx.mgr;
  switch (e.kind) {
    case ExprKind::BoolLit:
    case ExprKind::Ident:
      return plain(atom(ctx, e));
    case ExprKind::Flip:
      if (e.theta <= 0.0) return plain(CompiledTuple::leaf(BddManager::kFalse));
      if (e.theta >= 1.0) return plain(CompiledTuple::leaf(BddManager::kTrue));
      return plain(CompiledTuple::leaf(ctx.fresh_flip(e.theta)));
    case ExprKind::Fst:
      return plain(atom(ctx, e.kid(0)).left());
    case ExprKind::Snd:
      return plain(atom(ctx, e.kid(0)).right());
    case ExprKind::Tuple:
      return plain(CompiledTuple::pair(atom(ctx, e.kid(0)), atom(ctx, e.kid(1))));
    case ExprKind::Observe: {
      CompiledExpr c = plain(CompiledTuple::leaf(BddManager::kTrue));
      c.accepting = atom(ctx, e.kid(0)).node();
      return c;
    }
    case ExprKind::Ite: {
      NodeRef g = atom(ctx, e.kid(0)).node();
      CompiledExpr t = compile_expr(ctx, e.kid(1));
      CompiledExpr f = compile_expr(ctx, e.kid(2));
      // Leafwise ite(g, t, f) is (g and t) or (not g and f) as one operation.
      CompiledExpr c;
      c.formula = zip_leaves(t.formula, f.formula, [&](NodeRef a, NodeRef b) { return mgr.ite(g, a, b); });
      c.accepting = mgr.ite(g, t.accepting, f.accepting);
      return c;
    }
    case ExprKind::Let: {
      // Let chains are walked iteratively to bound recursion depth.
      const std::size_t depth = ctx.env.size();
      NodeRef accepting = BddManager::kTrue;
      const Expr* cur = &e;
      while (cur->kind == ExprKind::Let) {
        CompiledExpr bound = compile_expr(ctx, cur->kid(0));
        accepting = mgr.conjoin(accepting, bound.accepting);
        ctx.env.emplace_back(cur->name, std::move(bound.formula));
        cur = &cur->kid(1);
      }
      CompiledExpr body = compile_expr(ctx, *cur);
      ctx.env.resize(depth);
      body.accepting = mgr.conjoin(accepting, body.accepting);
      return body;
    }
    case ExprKind::Call:
      if (e.kids.size() != 1) throw InternalError("compiler: call must have one argument");
      return apply_call(ctx, e.name, atom(ctx, e.kid(0)));
    default:
      throw InternalError(std::string("compiler: not a core expression: ") + expr_kind_name(e.kind));
  }
}

const CompiledFunction& compile_function(CompileCtx& ctx, const FuncDef& f) {
  if (f.params.size() != 1) throw InternalError("compiler: function " + f.name + " is not unary");
  CompiledFunction cf;
  cf.formal = f.params[0].name;
  cf.arg = form(ctx.mgr, f.name + "." + cf.formal, f.params[0].type);

  WeightFn outer = std::move(ctx.weights);
  ctx.weights = WeightFn{};
  std::vector<std::pair<std::string, CompiledTuple>> saved_env;
  saved_env.swap(ctx.env);
  ctx.env.emplace_back(cf.formal, cf.arg);
  try {
    cf.body = compile_expr(ctx, *f.body);
  } catch (...) {
    ctx.env.swap(saved_env);
    ctx.weights = std::move(outer);
    throw;
  }
  ctx.env.swap(saved_env);
  cf.body.weights = std::move(ctx.weights);
  ctx.weights = std::move(outer);

  std::vector<NodeRef> roots = roots_of(cf.body);
  std::vector<char> seen(ctx.mgr.var_count(), 0);
  for (NodeRef r : roots) {
    for (VarId v : ctx.mgr.support(r)) {
      if (seen[v] || !cf.body.weights.contains(v)) continue;
      seen[v] = 1;
      cf.flips.push_back(v);
    }
  }
  std::sort(cf.flips.begin(), cf.flips.end(),
            [&](VarId a, VarId b) { return ctx.mgr.level(a) < ctx.mgr.level(b); });
  auto [it, inserted] = ctx.funcs.insert_or_assign(f.name, std::move(cf));
  return it->second;
}

CompiledExpr apply_call(CompileCtx& ctx, const std::string& func, const CompiledTuple& arg) {
  auto it = ctx.funcs.find(func);
  if (it == ctx.funcs.end()) throw InternalError("compiler: function '" + func + "' is not compiled");
  const CompiledFunction& f = it->second;

  std::unordered_map<VarId, NodeRef> subst;
  for (VarId v : f.flips) subst.emplace(v, ctx.fresh_flip(ctx.mgr.label(v).theta));
  std::vector<NodeRef> formals = f.arg.leaves();
  std::vector<NodeRef> actuals = arg.leaves();
  if (formals.size() != actuals.size()) {
    throw Error(ErrorKind::ShapeMismatch, "argument of '" + func + "' has the wrong shape");
  }
  for (std::size_t i = 0; i < formals.size(); ++i) subst.emplace(ctx.mgr.var_of(formals[i]), actuals[i]);

  std::vector<NodeRef> out = ctx.mgr.vector_compose(roots_of(f.body), subst);
  CompiledExpr c;
  c.accepting = out.back();
  out.pop_back();
  c.formula = CompiledTuple::rebuild(f.body.formula, out);
  return c;
}

const char* compile_mode_name(CompileMode mode) {
  return mode == CompileMode::Modular ? "modular" : "inline";
}

std::vector<NodeRef> roots_of(const CompiledExpr& c) {
  std::vector<NodeRef> r = c.formula.leaves();
  r.push_back(c.accepting);
  return r;
}

CompiledProgram compile_program(const Program& core, CompileMode mode, BddOptions options) {
  CompiledProgram out;
  out.manager = std::make_unique<BddManager>(std::move(options));
  CompileCtx ctx(*out.manager);
  if (mode == CompileMode::Modular) {
    for (const FuncDef& f : core.functions) compile_function(ctx, f);
    out.expr = compile_expr(ctx, *core.main);
  } else {
    Program flat = inline_calls(core);
    out.expr = compile_expr(ctx, *flat.main);
  }
  out.expr.weights = std::move(ctx.weights);
  for (VarId v = 0; v < out.manager->var_count(); ++v) {
    if (out.expr.weights.contains(v)) out.flip_names.push_back(out.manager->label(v).name);
  }
  std::vector<std::string> unused = out.manager->unused_order_names();
  if (!unused.empty()) {
    throw Error(ErrorKind::BadOrder, "order names unknown variable '" + unused.front() + "'");
  }
  return out;
}

}  // namespace bddppl
