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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bddppl/bdd.hpp"
#include "bddppl/errors.hpp"
#include "support/bdd_properties.hpp"

namespace bddppl {
namespace {

WeightFn flips(BddManager& mgr, const std::vector<double>& thetas, std::vector<NodeRef>& vars) {
  WeightFn w;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    vars.push_back(mgr.make_var(VarLabel::flip("f" + std::to_string(i + 1), thetas[i])));
    w.set(mgr.var_of(vars.back()), {thetas[i], 1.0 - thetas[i]});
  }
  return w;
}

TEST(Bdd, Terminals) {
  BddManager mgr;
  WeightFn empty;
  EXPECT_EQ(mgr.wmc(BddManager::kTrue, empty), 1.0);
  EXPECT_EQ(mgr.wmc(BddManager::kFalse, empty), 0.0);
  EXPECT_EQ(mgr.node_count(BddManager::kTrue), 1u);
  EXPECT_EQ(mgr.negate(BddManager::kTrue), BddManager::kFalse);
}

TEST(Bdd, DisjunctionCount) {
  BddManager mgr;
  std::vector<NodeRef> f;
  WeightFn w = flips(mgr, {0.1, 0.4}, f);
  EXPECT_NEAR(mgr.wmc(mgr.disjoin(f[0], f[1]), w), 0.46, 1e-15);
}

TEST(Bdd, ChainedFlipsAnnotations) {
  BddManager mgr;
  std::vector<NodeRef> f;
  WeightFn w = flips(mgr, {0.1, 0.2, 0.3, 0.4, 0.5}, f);
  NodeRef z = mgr.ite(f[0], mgr.ite(f[1], f[3], f[4]), mgr.ite(f[2], f[3], f[4]));
  EXPECT_NEAR(mgr.wmc(z, w), 0.471, 1e-12);
  EXPECT_EQ(mgr.node_count(z), 7u);
  auto values = mgr.wmc_values(z, w);
  EXPECT_NEAR(values.at(mgr.high(z)), 0.48, 1e-12);
  EXPECT_NEAR(values.at(mgr.low(z)), 0.47, 1e-12);
  EXPECT_NEAR(values.at(z), 0.471, 1e-12);
  EXPECT_LE(mgr.last_wmc_visits(), mgr.node_count(z));
}

TEST(Bdd, Canonicity) {
  auto r = testing::check_canonicity(1, 200);
  EXPECT_GT(r.trials, 0);
  EXPECT_EQ(r.violations, 0);
}

TEST(Bdd, WmcMatchesEnumeration) {
  auto r = testing::check_wmc_enumeration(2, 300);
  EXPECT_EQ(r.violations, 0) << "max error " << r.max_error;
}

TEST(Bdd, ProductRule) {
  auto r = testing::check_product_rule(3, 300);
  EXPECT_EQ(r.violations, 0) << "max error " << r.max_error;
}

TEST(Bdd, InclusionExclusion) {
  auto r = testing::check_inclusion_exclusion(4, 300);
  EXPECT_EQ(r.violations, 0) << "max error " << r.max_error;
}

TEST(Bdd, ConditionalIndependenceBound) {
  auto r = testing::check_conditional_independence(5, 50);
  EXPECT_EQ(r.trials, 50);
  EXPECT_EQ(r.violations, 0);
}

TEST(Bdd, SkippedLevelsUseBothWeights) {
  BddManager mgr;
  NodeRef a = mgr.make_var(VarLabel::free("a"));
  NodeRef b = mgr.make_var(VarLabel::free("b"));
  NodeRef c = mgr.make_var(VarLabel::free("c"));
  WeightFn w;
  w.set(mgr.var_of(a), {2.0, 3.0});
  w.set(mgr.var_of(b), {0.5, 0.25});
  w.set(mgr.var_of(c), {7.0, 1.0});
  // a && c skips b between them: 2 * (0.5 + 0.25) * 7.
  EXPECT_NEAR(mgr.wmc(mgr.conjoin(a, c), w), 2 * 0.75 * 7, 1e-12);
  // True ranges over the whole domain.
  EXPECT_NEAR(mgr.wmc(BddManager::kTrue, w), 5 * 0.75 * 8, 1e-12);
  (void)b;
}

TEST(Bdd, MissingWeight) {
  BddManager mgr;
  NodeRef a = mgr.make_var(VarLabel::free("a"));
  try {
    mgr.wmc(a, WeightFn{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingWeight);
  }
}

TEST(Bdd, VisitsBoundedByNodeCount) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    BddManager mgr;
    std::vector<NodeRef> vars;
    WeightFn w;
    for (int i = 0; i < 12; ++i) {
      vars.push_back(mgr.make_var(VarLabel::flip("f" + std::to_string(i), 0.3)));
      w.set(mgr.var_of(vars.back()), {0.3, 0.7});
    }
    NodeRef f = testing::random_formula(mgr, vars, rng, 20);
    mgr.wmc(f, w);
    ASSERT_LE(mgr.last_wmc_visits(), mgr.node_count(f));
  }
}

TEST(Bdd, RestrictAndCompose) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    BddManager mgr;
    std::vector<NodeRef> vars;
    for (int i = 0; i < 6; ++i) vars.push_back(mgr.make_var(VarLabel::free("x" + std::to_string(i))));
    NodeRef f = testing::random_formula(mgr, vars, rng, 10);
    NodeRef g = testing::random_formula(mgr, vars, rng, 6);
    NodeRef h = testing::random_formula(mgr, vars, rng, 6);
    const VarId v = mgr.var_of(vars[rng() % 6]);
    const VarId u = mgr.var_of(vars[rng() % 6]);
    NodeRef r1 = mgr.restrict(f, v, true);
    NodeRef c = mgr.compose(f, v, g);
    std::vector<NodeRef> vc = mgr.vector_compose({f, g}, {{v, g}, {u, h}});
    std::vector<bool> a(6);
    for (int m = 0; m < 64; ++m) {
      for (int i = 0; i < 6; ++i) a[i] = (m >> i) & 1;
      std::vector<bool> fixed = a;
      fixed[v] = true;
      ASSERT_EQ(mgr.evaluate(r1, a), mgr.evaluate(f, fixed));
      std::vector<bool> sub = a;
      sub[v] = mgr.evaluate(g, a);
      ASSERT_EQ(mgr.evaluate(c, a), mgr.evaluate(f, sub));
      std::vector<bool> simul = a;
      simul[v] = mgr.evaluate(g, a);
      simul[u] = mgr.evaluate(h, a);
      if (u == v) simul[v] = mgr.evaluate(h, a);  // later entries win in a map
      if (u != v) {
        ASSERT_EQ(mgr.evaluate(vc[0], a), mgr.evaluate(f, simul));
        ASSERT_EQ(mgr.evaluate(vc[1], a), mgr.evaluate(g, simul));
      }
    }
  }
}

TEST(Bdd, SimultaneousSwap) {
  BddManager mgr;
  NodeRef x = mgr.make_var(VarLabel::free("x"));
  NodeRef y = mgr.make_var(VarLabel::free("y"));
  NodeRef f = mgr.conjoin(x, mgr.negate(y));
  std::vector<NodeRef> out = mgr.vector_compose({f}, {{mgr.var_of(x), y}, {mgr.var_of(y), x}});
  EXPECT_EQ(out[0], mgr.conjoin(y, mgr.negate(x)));
}

TEST(Bdd, SharedNodesCountedOnce) {
  BddManager mgr;
  NodeRef x = mgr.make_var(VarLabel::free("x"));
  NodeRef y = mgr.make_var(VarLabel::free("y"));
  NodeRef a = mgr.conjoin(x, y), b = mgr.disjoin(x, y);
  EXPECT_EQ(mgr.node_count(a), 4u);
  EXPECT_EQ(mgr.node_count(b), 4u);
  // x&&y and x||y share the y node.
  EXPECT_EQ(mgr.node_count(std::vector<NodeRef>{a, b}), 5u);
  EXPECT_EQ(mgr.node_count(std::vector<NodeRef>{a, a}), 4u);
}

TEST(Bdd, DotExport) {
  BddManager mgr;
  NodeRef x = mgr.make_var(VarLabel::free("x"));
  std::string dot = mgr.export_dot({{"root", x}});
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("label=\"x\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"T\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"F\""), std::string::npos);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);

  NodeRef y = mgr.make_var(VarLabel::free("y"));
  std::string two = mgr.export_dot({{"a", mgr.conjoin(x, y)}, {"b", mgr.disjoin(x, y)}});
  std::size_t y_nodes = 0;
  for (std::size_t p = two.find("label=\"y\""); p != std::string::npos; p = two.find("label=\"y\"", p + 1)) ++y_nodes;
  EXPECT_EQ(y_nodes, 1u);
}

TEST(Bdd, NodeLimit) {
  BddOptions o;
  o.node_limit = 16;
  BddManager mgr(o);
  try {
    NodeRef acc = BddManager::kFalse;
    for (int i = 0; i < 64; ++i) acc = mgr.iff(acc, mgr.make_var(VarLabel::free("x" + std::to_string(i))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NodeLimit);
  }
}

TEST(Bdd, ExplicitOrder) {
  BddOptions o;
  o.order = {"y", "x", "unused"};
  BddManager mgr(o);
  VarId x = mgr.new_var(VarLabel::free("x"));
  VarId z = mgr.new_var(VarLabel::free("z"));
  VarId y = mgr.new_var(VarLabel::free("y"));
  EXPECT_LT(mgr.level(y), mgr.level(x));
  EXPECT_LT(mgr.level(x), mgr.level(z));
  EXPECT_EQ(mgr.unused_order_names(), std::vector<std::string>{"unused"});
  EXPECT_EQ(mgr.var_of(mgr.conjoin(mgr.var_node(x), mgr.var_node(y))), y);

  BddOptions dup;
  dup.order = {"a", "a"};
  EXPECT_THROW(BddManager m(dup), Error);
}

TEST(Bdd, LargeFormulaSurvivesCacheGrowth) {
  // Parity over many variables exercises the unique table and cache resizing.
  BddManager mgr;
  WeightFn w;
  NodeRef parity = BddManager::kFalse;
  for (int i = 0; i < 2000; ++i) {
    NodeRef v = mgr.make_var(VarLabel::flip("f" + std::to_string(i), 0.5));
    w.set(mgr.var_of(v), {0.5, 0.5});
    parity = mgr.negate(mgr.iff(parity, v));
  }
  EXPECT_EQ(mgr.node_count(parity), 2u * 2000 + 2 - 1);
  EXPECT_NEAR(mgr.wmc(parity, w), 0.5, 1e-12);
}

}  // namespace
}  // namespace bddppl
