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

#include "bddppl/oracle.hpp"

#include <memory>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bddppl/errors.hpp"

namespace bddppl {

namespace {

void add_mass(Distribution& d, const Value& v, double m) {
  if (m != 0.0) d[v] += m;
}

Distribution point(const Value& v) { return Distribution{{v, 1.0}}; }

// Sums `k(v) * d(v)` over the support of `d`.
template <typename K>
Distribution let_sum(const Distribution& d, K&& k) {
  Distribution out;
  for (const auto& [v, m] : d) {
    if (m == 0.0) continue;
    for (const auto& [w, n] : k(v)) add_mass(out, w, m * n);
  }
  return out;
}

}  // namespace

Distribution eval_unnormalized(const Expr& e, const Env& env, const FuncTable& table) {
  auto sub = [&](std::size_t i) { return eval_unnormalized(e.kid(i), env, table); };
  switch (e.kind) {
    case ExprKind::BoolLit:
      return point(Value::boolean(e.bool_value));
    case ExprKind::Ident: {
      auto it = env.find(e.name);
      if (it == env.end()) throw InternalError("oracle: unbound identifier " + e.name);
      return point(it->second);
    }
    case ExprKind::Fst:
      return let_sum(sub(0), [](const Value& v) { return point(v.left()); });
    case ExprKind::Snd:
      return let_sum(sub(0), [](const Value& v) { return point(v.right()); });
    case ExprKind::Tuple: {
      Distribution b = sub(1);
      return let_sum(sub(0), [&](const Value& l) {
        return let_sum(b, [&](const Value& r) { return point(Value::pair(l, r)); });
      });
    }
    case ExprKind::Let:
      return let_sum(sub(0), [&](const Value& v) {
        Env inner = env;
        inner[e.name] = v;
        return eval_unnormalized(e.kid(1), inner, table);
      });
    case ExprKind::Flip: {
      Distribution d;
      add_mass(d, Value::boolean(true), e.theta);
      add_mass(d, Value::boolean(false), 1.0 - e.theta);
      return d;
    }
    case ExprKind::Ite:
      return let_sum(sub(0), [&](const Value& g) { return g.as_bool() ? sub(1) : sub(2); });
    case ExprKind::Observe:
      return let_sum(sub(0), [](const Value& g) {
        return g.as_bool() ? point(Value::boolean(true)) : Distribution{};
      });
    case ExprKind::Call: {
      if (e.kids.size() != 1) throw InternalError("oracle: call with more than one argument");
      auto it = table.find(e.name);
      if (it == table.end()) throw InternalError("oracle: unknown function " + e.name);
      return let_sum(sub(0), it->second);
    }
    default:
      throw InternalError(std::string("oracle: not a core expression: ") + expr_kind_name(e.kind));
  }
}

double accepting_semantics(const Expr& e, const Env& env, const FuncTable& table) {
  return total_mass(eval_unnormalized(e, env, table));
}

Distribution normalize(const Distribution& d) {
  double z = total_mass(d);
  Distribution out;
  for (const auto& [v, m] : d) out[v] = z == 0.0 ? 0.0 : m / z;
  return out;
}

Distribution distributional_semantics(const Expr& e, const Env& env, const FuncTable& table) {
  return normalize(eval_unnormalized(e, env, table));
}

OracleResult eval_program(const Program& core) {
  auto table = std::make_shared<FuncTable>();
  for (const FuncDef& f : core.functions) {
    if (f.params.size() != 1) throw InternalError("oracle: function " + f.name + " is not unary");
    auto memo = std::make_shared<std::map<Value, Distribution>>();
    const FuncDef* def = &f;
    const FuncTable* tab = table.get();
    (*table)[f.name] = [def, tab, memo](const Value& arg) {
      auto it = memo->find(arg);
      if (it != memo->end()) return it->second;
      Distribution d = eval_unnormalized(*def->body, Env{{def->params[0].name, arg}}, *tab);
      memo->emplace(arg, d);
      return d;
    };
  }
  OracleResult r;
  r.unnormalized = eval_unnormalized(*core.main, Env{}, *table);
  r.accepting = total_mass(r.unnormalized);
  r.distribution = normalize(r.unnormalized);
  return r;
}

namespace {

class FlipCounter {
 public:
  explicit FlipCounter(const Program& p) {
    for (const FuncDef& f : p.functions) per_function_[f.name] = count(*f.body);
  }

  double count(const Expr& e) const {
    double n = 0.0;
    switch (e.kind) {
      case ExprKind::Flip:
        n = 1.0;
        break;
      case ExprKind::Discrete:
        n = static_cast<double>(e.params.size()) - 1.0;
        break;
      case ExprKind::Call:
        n = callee(e.name);
        break;
      case ExprKind::Iterate:
        n = callee(e.name) * e.int_value;
        break;
      default:
        break;
    }
    for (const auto& k : e.kids) n += count(*k);
    return n;
  }

 private:
  double callee(const std::string& name) const {
    auto it = per_function_.find(name);
    return it == per_function_.end() ? 0.0 : it->second;
  }

  std::unordered_map<std::string, double> per_function_;
};

struct Rejected {};

// Depth-first enumeration of choice sequences. Each run replays the current
// prefix of `trace_` and extends it with the first alternative of nonzero
// probability; `advance` moves to the next sequence in odometer order.
class Enumerator {
 public:
  explicit Enumerator(const Program& p) : program_(p) {}

  OracleResult run() {
    OracleResult r;
    do {
      pos_ = 0;
      weight_ = 1.0;
      try {
        Scope scope;
        Value v = eval(*program_.main, scope);
        add_mass(r.unnormalized, v, weight_);
      } catch (const Rejected&) {
      }
      trace_.resize(pos_);
    } while (advance());
    r.accepting = total_mass(r.unnormalized);
    r.distribution = normalize(r.unnormalized);
    return r;
  }

 private:
  using Scope = std::vector<std::pair<std::string, Value>>;

  struct Choice {
    std::vector<double> probs;
    std::size_t index;
  };

  static std::size_t next_nonzero(const std::vector<double>& probs, std::size_t from) {
    while (from < probs.size() && probs[from] == 0.0) ++from;
    return from;
  }

  bool advance() {
    while (!trace_.empty()) {
      Choice& c = trace_.back();
      std::size_t n = next_nonzero(c.probs, c.index + 1);
      if (n < c.probs.size()) {
        c.index = n;
        return true;
      }
      trace_.pop_back();
    }
    return false;
  }

  std::size_t choose(std::vector<double> probs) {
    if (pos_ == trace_.size()) {
      std::size_t first = next_nonzero(probs, 0);
      if (first == probs.size()) throw InternalError("oracle: choice with no mass");
      trace_.push_back({std::move(probs), first});
    }
    const Choice& c = trace_[pos_++];
    weight_ *= c.probs[c.index];
    return c.index;
  }

  static const Value& lookup(const Scope& scope, const std::string& name) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    throw InternalError("oracle: unbound identifier " + name);
  }

  static int index_of(const Value& v) {
    int n = static_cast<int>(leaves(v).size());
    auto k = one_hot_index(v, n);
    if (!k) throw InternalError("oracle: integer value is not one-hot");
    return *k;
  }

  Value call(const std::string& name, std::vector<Value> args) {
    const FuncDef* f = program_.find_function(name);
    if (!f) throw InternalError("oracle: unknown function " + name);
    if (f->params.size() != args.size()) throw InternalError("oracle: arity mismatch for " + name);
    Scope inner;
    for (std::size_t i = 0; i < args.size(); ++i) inner.emplace_back(f->params[i].name, std::move(args[i]));
    return eval(*f->body, inner);
  }

  Value eval(const Expr& e, Scope& scope) {
    switch (e.kind) {
      case ExprKind::BoolLit:
        return Value::boolean(e.bool_value);
      case ExprKind::Ident:
        return lookup(scope, e.name);
      case ExprKind::Fst:
        return eval(e.kid(0), scope).left();
      case ExprKind::Snd:
        return eval(e.kid(0), scope).right();
      case ExprKind::Tuple: {
        Value l = eval(e.kid(0), scope);
        Value r = eval(e.kid(1), scope);
        return Value::pair(std::move(l), std::move(r));
      }
      case ExprKind::Let: {
        Value v = eval(e.kid(0), scope);
        scope.emplace_back(e.name, std::move(v));
        Value out = eval(e.kid(1), scope);
        scope.pop_back();
        return out;
      }
      case ExprKind::Flip:
        return Value::boolean(choose({e.theta, 1.0 - e.theta}) == 0);
      case ExprKind::Ite:
        return eval(e.kid(0), scope).as_bool() ? eval(e.kid(1), scope) : eval(e.kid(2), scope);
      case ExprKind::Observe:
        if (!eval(e.kid(0), scope).as_bool()) throw Rejected{};
        return Value::boolean(true);
      case ExprKind::Call: {
        std::vector<Value> args;
        for (const auto& k : e.kids) args.push_back(eval(*k, scope));
        return call(e.name, std::move(args));
      }
      case ExprKind::And: {
        bool a = eval(e.kid(0), scope).as_bool();
        bool b = eval(e.kid(1), scope).as_bool();
        return Value::boolean(a && b);
      }
      case ExprKind::Or: {
        bool a = eval(e.kid(0), scope).as_bool();
        bool b = eval(e.kid(1), scope).as_bool();
        return Value::boolean(a || b);
      }
      case ExprKind::Not:
        return Value::boolean(!eval(e.kid(0), scope).as_bool());
      case ExprKind::Eq: {
        Value a = eval(e.kid(0), scope);
        Value b = eval(e.kid(1), scope);
        return Value::boolean(a == b);
      }
      case ExprKind::Discrete: {
        double z = std::accumulate(e.params.begin(), e.params.end(), 0.0);
        std::vector<double> probs;
        for (double p : e.params) probs.push_back(p / z);
        int n = static_cast<int>(probs.size());
        return one_hot_value(n, static_cast<int>(choose(std::move(probs))));
      }
      case ExprKind::IntLit:
        return one_hot_value(e.int_size, e.int_value);
      case ExprKind::IntAdd:
      case ExprKind::IntMul: {
        Value a = eval(e.kid(0), scope);
        Value b = eval(e.kid(1), scope);
        int n = static_cast<int>(leaves(a).size());
        int i = index_of(a);
        int j = index_of(b);
        return one_hot_value(n, e.kind == ExprKind::IntAdd ? (i + j) % n : (i * j) % n);
      }
      case ExprKind::Iterate: {
        Value v = eval(e.kid(0), scope);
        for (int i = 0; i < e.int_value; ++i) v = call(e.name, {std::move(v)});
        return v;
      }
    }
    throw InternalError("oracle: unhandled expression kind");
  }

  const Program& program_;
  std::vector<Choice> trace_;
  std::size_t pos_ = 0;
  double weight_ = 1.0;
};

}  // namespace

double static_flip_count(const Program& program) {
  return FlipCounter(program).count(*program.main);
}

OracleResult enumerate_program(const Program& typed) {
  double flips = static_flip_count(typed);
  if (flips > kOracleFlipLimit) {
    throw Error(ErrorKind::OracleTooLarge,
                "program has " + std::to_string(static_cast<long long>(flips)) +
                    " flips, the enumeration oracle accepts at most " +
                    std::to_string(kOracleFlipLimit));
  }
  return Enumerator(typed).run();
}

}  // namespace bddppl
