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

#include "support/bdd_properties.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bddppl::testing {
namespace {

std::vector<NodeRef> make_vars(BddManager& mgr, int n, const std::string& prefix) {
  std::vector<NodeRef> vars;
  for (int i = 0; i < n; ++i) vars.push_back(mgr.make_var(VarLabel::free(prefix + std::to_string(i))));
  return vars;
}

std::vector<bool> truth_table(const BddManager& mgr, NodeRef f) {
  const std::size_t n = mgr.var_count();
  std::vector<bool> table(std::size_t{1} << n);
  std::vector<bool> a(n);
  for (std::size_t m = 0; m < table.size(); ++m) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (m >> i) & 1;
    table[m] = mgr.evaluate(f, a);
  }
  return table;
}

WeightFn random_weights(const BddManager& mgr, std::mt19937_64& rng, bool normalized) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WeightFn w;
  for (VarId v = 0; v < mgr.var_count(); ++v) {
    double hi = u(rng);
    w.set(v, normalized ? LiteralWeight{hi, 1.0 - hi} : LiteralWeight{2 * hi, 2 * u(rng)});
  }
  return w;
}

void record(PropertyReport& r, double err, double tolerance) {
  ++r.trials;
  r.max_error = std::max(r.max_error, err);
  if (!(err <= tolerance)) ++r.violations;
}

}  // namespace

NodeRef random_formula(BddManager& mgr, const std::vector<NodeRef>& vars, std::mt19937_64& rng, int ops) {
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  std::uniform_int_distribution<int> op(0, 5);
  std::vector<NodeRef> pool;
  auto literal = [&] {
    NodeRef v = vars[pick(rng)];
    return rng() & 1 ? mgr.negate(v) : v;
  };
  for (int i = 0; i < 3; ++i) pool.push_back(literal());
  for (int i = 0; i < ops; ++i) {
    std::uniform_int_distribution<std::size_t> from(0, pool.size() - 1);
    NodeRef a = pool[from(rng)], b = rng() % 3 == 0 ? literal() : pool[from(rng)];
    switch (op(rng)) {
      case 0: case 1: pool.push_back(mgr.conjoin(a, b)); break;
      case 2: case 3: pool.push_back(mgr.disjoin(a, b)); break;
      case 4: pool.push_back(mgr.iff(a, b)); break;
      default: pool.push_back(mgr.ite(literal(), a, b)); break;
    }
  }
  return pool.back();
}

double brute_force_wmc(const BddManager& mgr, NodeRef f, const WeightFn& w) {
  const std::size_t n = mgr.var_count();
  std::vector<bool> a(n);
  double total = 0.0;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (m >> i) & 1;
    if (!mgr.evaluate(f, a)) continue;
    double p = 1.0;
    for (const auto& [v, lw] : w.entries()) p *= a[v] ? lw.high : lw.low;
    total += p;
  }
  return total;
}

PropertyReport check_canonicity(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  PropertyReport r;
  for (int t = 0; t < trials; ++t) {
    BddManager mgr;
    std::vector<NodeRef> vars = make_vars(mgr, 1 + static_cast<int>(rng() % 4), "x");
    std::vector<NodeRef> fs;
    for (int i = 0; i < 12; ++i) fs.push_back(random_formula(mgr, vars, rng, 1 + static_cast<int>(rng() % 6)));
    // Rebuilds through De Morgan and double negation.
    NodeRef a = fs[0], b = fs[1];
    fs.push_back(mgr.negate(mgr.conjoin(mgr.negate(a), mgr.negate(b))));
    fs.push_back(mgr.disjoin(b, a));
    fs.push_back(mgr.negate(mgr.negate(a)));
    std::vector<std::vector<bool>> tables;
    for (NodeRef f : fs) tables.push_back(truth_table(mgr, f));
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (std::size_t j = 0; j < fs.size(); ++j) {
        record(r, (tables[i] == tables[j]) == (fs[i] == fs[j]) ? 0.0 : 1.0, 0.0);
      }
    }
  }
  return r;
}

PropertyReport check_wmc_enumeration(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  PropertyReport r;
  for (int t = 0; t < trials; ++t) {
    BddManager mgr;
    std::vector<NodeRef> vars = make_vars(mgr, 1 + static_cast<int>(rng() % 10), "x");
    // Formulas over a prefix of the variables leave skipped levels below.
    std::vector<NodeRef> used(vars.begin(), vars.begin() + 1 + static_cast<long>(rng() % vars.size()));
    NodeRef f = random_formula(mgr, used, rng, 2 + static_cast<int>(rng() % 12));
    WeightFn w = random_weights(mgr, rng, false);
    const double want = brute_force_wmc(mgr, f, w);
    record(r, std::abs(mgr.wmc(f, w) - want) / std::max(1.0, std::abs(want)), 1e-12);
    record(r, std::abs(mgr.wmc(BddManager::kFalse, w)), 0.0);
  }
  return r;
}

PropertyReport check_product_rule(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  PropertyReport r;
  for (int t = 0; t < trials; ++t) {
    BddManager mgr;
    std::vector<NodeRef> vars = make_vars(mgr, 2 + static_cast<int>(rng() % 9), "x");
    std::size_t cut = 1 + rng() % (vars.size() - 1);
    std::vector<NodeRef> left(vars.begin(), vars.begin() + static_cast<long>(cut));
    std::vector<NodeRef> right(vars.begin() + static_cast<long>(cut), vars.end());
    if (rng() & 1) std::swap(left, right);
    NodeRef a = random_formula(mgr, left, rng, 1 + static_cast<int>(rng() % 8));
    NodeRef b = random_formula(mgr, right, rng, 1 + static_cast<int>(rng() % 8));
    WeightFn w = random_weights(mgr, rng, true);
    record(r, std::abs(mgr.wmc(mgr.conjoin(a, b), w) - mgr.wmc(a, w) * mgr.wmc(b, w)), 1e-12);
  }
  return r;
}

PropertyReport check_inclusion_exclusion(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  PropertyReport r;
  for (int t = 0; t < trials; ++t) {
    BddManager mgr;
    std::vector<NodeRef> vars = make_vars(mgr, 1 + static_cast<int>(rng() % 10), "x");
    NodeRef a = random_formula(mgr, vars, rng, 1 + static_cast<int>(rng() % 10));
    NodeRef b = random_formula(mgr, vars, rng, 1 + static_cast<int>(rng() % 10));
    WeightFn w = random_weights(mgr, rng, false);
    double lhs = mgr.wmc(mgr.disjoin(a, b), w);
    double rhs = mgr.wmc(a, w) + mgr.wmc(b, w) - mgr.wmc(mgr.conjoin(a, b), w);
    record(r, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-12);
  }
  return r;
}

PropertyReport check_conditional_independence(std::uint64_t seed, int pairs) {
  std::mt19937_64 rng(seed);
  PropertyReport r;
  while (r.trials < pairs) {
    BddManager mgr;
    // Allocation order is level order: vars(B1) < z < vars(B2).
    std::vector<NodeRef> before = make_vars(mgr, 2 + static_cast<int>(rng() % 6), "a");
    NodeRef z = mgr.make_var(VarLabel::free("z"));
    std::vector<NodeRef> after = make_vars(mgr, 2 + static_cast<int>(rng() % 6), "b");
    before.push_back(z);
    after.push_back(z);
    NodeRef b1 = random_formula(mgr, before, rng, 2 + static_cast<int>(rng() % 10));
    NodeRef b2 = random_formula(mgr, after, rng, 2 + static_cast<int>(rng() % 10));
    std::vector<VarId> s1 = mgr.support(b1), s2 = mgr.support(b2);
    const VarId zv = mgr.var_of(z);
    if (std::find(s1.begin(), s1.end(), zv) == s1.end() || std::find(s2.begin(), s2.end(), zv) == s2.end()) {
      continue;  // only pairs that genuinely share z count
    }
    double joint = static_cast<double>(mgr.node_count(mgr.conjoin(b1, b2)));
    double bound = static_cast<double>(mgr.node_count(b1) + mgr.node_count(b2));
    record(r, std::max(0.0, joint - bound), 0.0);
  }
  return r;
}

}  // namespace bddppl::testing
