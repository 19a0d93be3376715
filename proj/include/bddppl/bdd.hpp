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

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bddppl {

/// Index of a node in a `BddManager`. Node 0 is False and node 1 is True.
using NodeRef = std::uint32_t;
using VarId = std::uint32_t;

struct VarLabel {
  enum class Kind { Flip, Free };
  Kind kind = Kind::Flip;
  std::string name;
  double theta = 0.0;  // Flip only

  static VarLabel flip(std::string name, double theta) { return {Kind::Flip, std::move(name), theta}; }
  static VarLabel free(std::string name) { return {Kind::Free, std::move(name), 0.0}; }
};

struct LiteralWeight {
  double high = 1.0;  // weight of the positive literal
  double low = 1.0;   // weight of the negative literal
};

/// Partial map from variables to literal weights. Model counts range over
/// exactly the variables in the domain.
class WeightFn {
 public:
  void set(VarId v, LiteralWeight w);
  bool contains(VarId v) const { return weights_.count(v) != 0; }
  const LiteralWeight& at(VarId v) const;
  const std::unordered_map<VarId, LiteralWeight>& entries() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  std::uint64_t revision() const { return revision_; }

 private:
  std::unordered_map<VarId, LiteralWeight> weights_;
  std::uint64_t revision_ = 0;
};

/// Reads BDDPPL_NODE_LIMIT, defaulting to 50 million.
std::size_t default_node_limit();

struct BddOptions {
  std::size_t node_limit = default_node_limit();
  /// Variables whose label names appear here are ordered first, in list
  /// order; all others follow in allocation order.
  std::vector<std::string> order;
};

struct CacheStats {
  std::uint64_t lookups = 0;
  std::uint64_t hits = 0;
};

/// Reduced ordered BDDs sharing one node store. Nodes are never freed.
/// Not thread-safe; use one manager per thread.
class BddManager {
 public:
  static constexpr NodeRef kFalse = 0;
  static constexpr NodeRef kTrue = 1;

  explicit BddManager(BddOptions options = {});

  NodeRef mk_true() const noexcept { return kTrue; }
  NodeRef mk_false() const noexcept { return kFalse; }
  NodeRef constant(bool b) const noexcept { return b ? kTrue : kFalse; }

  /// Allocates a fresh variable and returns its positive literal.
  NodeRef make_var(VarLabel label);
  VarId new_var(VarLabel label);
  NodeRef var_node(VarId v);

  std::size_t var_count() const noexcept { return labels_.size(); }
  const VarLabel& label(VarId v) const { return labels_.at(v); }
  std::uint32_t level(VarId v) const { return levels_.at(v); }
  /// Names from the order list that no allocated variable carries.
  std::vector<std::string> unused_order_names() const;

  bool is_terminal(NodeRef n) const noexcept { return n < 2; }
  VarId var_of(NodeRef n) const { return nodes_[n].var; }
  NodeRef high(NodeRef n) const { return nodes_[n].hi; }
  NodeRef low(NodeRef n) const { return nodes_[n].lo; }

  NodeRef conjoin(NodeRef a, NodeRef b);
  NodeRef disjoin(NodeRef a, NodeRef b);
  NodeRef negate(NodeRef a);
  NodeRef iff(NodeRef a, NodeRef b);
  NodeRef ite(NodeRef g, NodeRef t, NodeRef e);

  NodeRef restrict(NodeRef f, VarId v, bool value);
  /// f with `v` replaced by g.
  NodeRef compose(NodeRef f, VarId v, NodeRef g);
  /// Simultaneous substitution over several roots; unmapped variables stay.
  std::vector<NodeRef> vector_compose(const std::vector<NodeRef>& roots,
                                      const std::unordered_map<VarId, NodeRef>& subst);

  /// Variables `f` depends on, by level.
  std::vector<VarId> support(NodeRef f) const;
  bool evaluate(NodeRef f, const std::vector<bool>& assignment) const;

  /// Weighted model count over the domain of `w`. Throws MissingWeight when
  /// `root` depends on a variable outside it.
  double wmc(NodeRef root, const WeightFn& w);
  /// Per-node counts of the sub-diagrams below `root` (variables at or below
  /// each node's level).
  std::unordered_map<NodeRef, double> wmc_values(NodeRef root, const WeightFn& w);
  /// Distinct nodes evaluated by the last `wmc` call.
  std::size_t last_wmc_visits() const noexcept { return last_visits_; }

  /// Distinct nodes reachable from `roots`, counting each reachable terminal.
  std::size_t node_count(const std::vector<NodeRef>& roots) const;
  std::size_t node_count(NodeRef root) const { return node_count(std::vector<NodeRef>{root}); }
  /// Nodes allocated so far, terminals included.
  std::size_t allocated_nodes() const noexcept { return nodes_.size(); }

  /// Graphviz rendering; high edges solid, low edges dashed.
  std::string export_dot(const std::vector<std::pair<std::string, NodeRef>>& roots) const;

  const CacheStats& cache_stats() const noexcept { return stats_; }

 private:
  struct Node {
    VarId var;
    NodeRef lo;
    NodeRef hi;
  };

  struct CacheEntry {
    std::uint32_t op = 0;
    NodeRef a = 0, b = 0, c = 0;
    NodeRef result = 0;
  };

  enum Op : std::uint32_t { kIte = 1, kRestrict = 2 };

  static constexpr std::uint32_t kTerminalLevel = 0xffffffffu;

  std::uint32_t node_level(NodeRef n) const { return n < 2 ? kTerminalLevel : levels_[nodes_[n].var]; }
  NodeRef make_node(VarId v, NodeRef lo, NodeRef hi);
  void grow_unique();
  bool cache_lookup(std::uint32_t op, NodeRef a, NodeRef b, NodeRef c, NodeRef& out);
  void cache_store(std::uint32_t op, NodeRef a, NodeRef b, NodeRef c, NodeRef r);
  void maybe_grow_cache();

  struct WmcDomain;
  const WmcDomain& prepare(const WeightFn& w);
  double wmc_node(NodeRef n, const WmcDomain& d);
  double skip(const WmcDomain& d, std::size_t from, std::size_t to) const;

  BddOptions options_;
  std::vector<Node> nodes_;
  std::vector<NodeRef> unique_;
  std::size_t unique_used_ = 0;
  std::vector<CacheEntry> cache_;
  CacheStats stats_;

  std::vector<VarLabel> labels_;
  std::vector<std::uint32_t> levels_;
  std::vector<NodeRef> var_nodes_;
  std::unordered_map<std::string, std::uint32_t> priority_;
  std::size_t free_level_ = 0;

  struct WmcDomain {
    const WeightFn* source = nullptr;
    std::uint64_t revision = 0;
    std::size_t var_count = 0;
    std::vector<std::uint32_t> position;  // by VarId; npos when outside
    std::vector<LiteralWeight> weights;   // by position
    std::vector<double> tree;             // segment tree of high+low sums
    std::size_t leaves = 1;
    bool all_unit = true;
  };
  WmcDomain domain_;
  std::vector<double> scratch_value_;
  std::vector<std::uint32_t> scratch_stamp_;
  std::uint32_t stamp_ = 0;
  std::size_t last_visits_ = 0;
  bool terminal_seen_[2] = {false, false};
};

}  // namespace bddppl
