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

#include "bddppl/bdd.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "bddppl/errors.hpp"

namespace bddppl {

namespace {

std::atomic<std::uint64_t> g_weight_revision{1};

constexpr std::uint32_t kNoPosition = std::numeric_limits<std::uint32_t>::max();

inline std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

inline std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix(a * 0x9e3779b97f4a7c15ULL ^ mix(b + 0x632be59bd9b4e019ULL) ^ (c << 1));
}

}  // namespace

void WeightFn::set(VarId v, LiteralWeight w) {
  weights_[v] = w;
  revision_ = g_weight_revision.fetch_add(1);
}

const LiteralWeight& WeightFn::at(VarId v) const {
  auto it = weights_.find(v);
  if (it == weights_.end()) {
    throw Error(ErrorKind::MissingWeight, "no weight for variable " + std::to_string(v));
  }
  return it->second;
}

std::size_t default_node_limit() {
  constexpr std::size_t kDefault = 50'000'000;
  const char* env = std::getenv("BDDPPL_NODE_LIMIT");
  if (!env || !*env) return kDefault;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v < 2) return kDefault;
  return static_cast<std::size_t>(v);
}

BddManager::BddManager(BddOptions options) : options_(std::move(options)) {
  nodes_.push_back({kNoPosition, kFalse, kFalse});
  nodes_.push_back({kNoPosition, kTrue, kTrue});
  unique_.assign(1u << 12, 0);
  cache_.assign(1u << 16, CacheEntry{});
  for (std::size_t i = 0; i < options_.order.size(); ++i) {
    const std::string& name = options_.order[i];
    if (!priority_.emplace(name, static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorKind::BadOrder, "variable '" + name + "' listed twice in the order");
    }
  }
  free_level_ = options_.order.size();
}

VarId BddManager::new_var(VarLabel label) {
  VarId v = static_cast<VarId>(labels_.size());
  auto it = priority_.find(label.name);
  std::uint32_t lvl;
  if (it != priority_.end() && it->second != kNoPosition) {
    lvl = it->second;
    it->second = kNoPosition;  // a name orders only its first variable
  } else {
    lvl = static_cast<std::uint32_t>(free_level_++);
  }
  labels_.push_back(std::move(label));
  levels_.push_back(lvl);
  var_nodes_.push_back(make_node(v, kFalse, kTrue));
  return v;
}

NodeRef BddManager::make_var(VarLabel label) { return var_node(new_var(std::move(label))); }

NodeRef BddManager::var_node(VarId v) { return var_nodes_.at(v); }

std::vector<std::string> BddManager::unused_order_names() const {
  std::vector<std::string> out;
  for (const std::string& name : options_.order) {
    if (priority_.at(name) != kNoPosition) out.push_back(name);
  }
  return out;
}

void BddManager::grow_unique() {
  std::vector<NodeRef> bigger(unique_.size() * 2, 0);
  const std::size_t mask = bigger.size() - 1;
  for (NodeRef n : unique_) {
    if (n == 0) continue;
    const Node& nd = nodes_[n];
    std::size_t i = hash3(nd.var, nd.lo, nd.hi) & mask;
    while (bigger[i] != 0) i = (i + 1) & mask;
    bigger[i] = n;
  }
  unique_.swap(bigger);
}

NodeRef BddManager::make_node(VarId v, NodeRef lo, NodeRef hi) {
  if (lo == hi) return lo;
  const std::size_t mask = unique_.size() - 1;
  std::size_t i = hash3(v, lo, hi) & mask;
  while (unique_[i] != 0) {
    const Node& nd = nodes_[unique_[i]];
    if (nd.var == v && nd.lo == lo && nd.hi == hi) return unique_[i];
    i = (i + 1) & mask;
  }
  if (nodes_.size() >= options_.node_limit) {
    throw Error(ErrorKind::NodeLimit, "BDD node limit of " + std::to_string(options_.node_limit) +
                                          " reached (set BDDPPL_NODE_LIMIT to raise it)");
  }
  NodeRef n = static_cast<NodeRef>(nodes_.size());
  nodes_.push_back({v, lo, hi});
  unique_[i] = n;
  if (++unique_used_ * 2 > unique_.size()) grow_unique();
  maybe_grow_cache();
  return n;
}

void BddManager::maybe_grow_cache() {
  constexpr std::size_t kMaxCache = std::size_t{1} << 22;
  if (nodes_.size() > cache_.size() && cache_.size() < kMaxCache) {
    cache_.assign(cache_.size() * 4, CacheEntry{});
  }
}

bool BddManager::cache_lookup(std::uint32_t op, NodeRef a, NodeRef b, NodeRef c, NodeRef& out) {
  ++stats_.lookups;
  const CacheEntry& e = cache_[hash3(a ^ (std::uint64_t{op} << 32), b, c) & (cache_.size() - 1)];
  if (e.op == op && e.a == a && e.b == b && e.c == c) {
    ++stats_.hits;
    out = e.result;
    return true;
  }
  return false;
}

void BddManager::cache_store(std::uint32_t op, NodeRef a, NodeRef b, NodeRef c, NodeRef r) {
  CacheEntry& e = cache_[hash3(a ^ (std::uint64_t{op} << 32), b, c) & (cache_.size() - 1)];
  e = {op, a, b, c, r};
}

NodeRef BddManager::ite(NodeRef f, NodeRef g, NodeRef h) {
  if (f == kTrue) return g;
  if (f == kFalse) return h;
  if (g == f) g = kTrue;
  if (h == f) h = kFalse;
  if (g == h) return g;
  if (g == kTrue && h == kFalse) return f;
  // Commutative forms share one cache slot.
  if (h == kFalse && g < f) std::swap(f, g);
  if (g == kTrue && h < f) std::swap(f, h);

  NodeRef r;
  if (cache_lookup(kIte, f, g, h, r)) return r;

  const std::uint32_t top = std::min({node_level(f), node_level(g), node_level(h)});
  auto cof = [&](NodeRef x, bool hi) -> NodeRef {
    if (node_level(x) != top) return x;
    return hi ? nodes_[x].hi : nodes_[x].lo;
  };
  VarId v = node_level(f) == top ? nodes_[f].var : node_level(g) == top ? nodes_[g].var : nodes_[h].var;
  NodeRef t = ite(cof(f, true), cof(g, true), cof(h, true));
  NodeRef e = ite(cof(f, false), cof(g, false), cof(h, false));
  r = make_node(v, e, t);
  cache_store(kIte, f, g, h, r);
  return r;
}

NodeRef BddManager::conjoin(NodeRef a, NodeRef b) { return ite(a, b, kFalse); }
NodeRef BddManager::disjoin(NodeRef a, NodeRef b) { return ite(a, kTrue, b); }
NodeRef BddManager::negate(NodeRef a) { return ite(a, kFalse, kTrue); }
NodeRef BddManager::iff(NodeRef a, NodeRef b) { return ite(a, b, negate(b)); }

NodeRef BddManager::restrict(NodeRef f, VarId v, bool value) {
  const std::uint32_t lvl = levels_.at(v);
  if (node_level(f) > lvl) return f;
  const NodeRef key = v * 2 + (value ? 1 : 0);
  NodeRef r;
  if (cache_lookup(kRestrict, f, key, 0, r)) return r;
  const Node nd = nodes_[f];
  if (nd.var == v) {
    r = value ? nd.hi : nd.lo;
  } else {
    NodeRef lo = restrict(nd.lo, v, value);
    NodeRef hi = restrict(nd.hi, v, value);
    r = make_node(nd.var, lo, hi);
  }
  cache_store(kRestrict, f, key, 0, r);
  return r;
}

NodeRef BddManager::compose(NodeRef f, VarId v, NodeRef g) {
  return ite(g, restrict(f, v, true), restrict(f, v, false));
}

std::vector<NodeRef> BddManager::vector_compose(const std::vector<NodeRef>& roots,
                                                const std::unordered_map<VarId, NodeRef>& subst) {
  std::unordered_map<NodeRef, NodeRef> memo;
  auto go = [&](auto&& self, NodeRef f) -> NodeRef {
    if (is_terminal(f)) return f;
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const Node nd = nodes_[f];
    auto s = subst.find(nd.var);
    NodeRef g = s == subst.end() ? var_nodes_[nd.var] : s->second;
    NodeRef hi = self(self, nd.hi);
    NodeRef lo = self(self, nd.lo);
    NodeRef r = ite(g, hi, lo);
    memo.emplace(f, r);
    return r;
  };
  std::vector<NodeRef> out;
  out.reserve(roots.size());
  for (NodeRef r : roots) out.push_back(go(go, r));
  return out;
}

std::vector<VarId> BddManager::support(NodeRef f) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<char> in(labels_.size(), 0);
  std::vector<NodeRef> stack{f};
  std::vector<VarId> out;
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = 1;
    if (!in[nodes_[n].var]) {
      in[nodes_[n].var] = 1;
      out.push_back(nodes_[n].var);
    }
    stack.push_back(nodes_[n].lo);
    stack.push_back(nodes_[n].hi);
  }
  std::sort(out.begin(), out.end(), [&](VarId a, VarId b) { return levels_[a] < levels_[b]; });
  return out;
}

bool BddManager::evaluate(NodeRef f, const std::vector<bool>& assignment) const {
  while (!is_terminal(f)) {
    const Node& nd = nodes_[f];
    f = assignment.at(nd.var) ? nd.hi : nd.lo;
  }
  return f == kTrue;
}

const BddManager::WmcDomain& BddManager::prepare(const WeightFn& w) {
  WmcDomain& d = domain_;
  if (d.source == &w && d.revision == w.revision() && d.var_count == labels_.size()) return d;
  d.source = &w;
  d.revision = w.revision();
  d.var_count = labels_.size();
  std::vector<VarId> vars;
  for (const auto& [v, lw] : w.entries()) {
    if (v < labels_.size()) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end(), [&](VarId a, VarId b) { return levels_[a] < levels_[b]; });
  d.position.assign(labels_.size(), kNoPosition);
  d.weights.clear();
  d.all_unit = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    d.position[vars[i]] = static_cast<std::uint32_t>(i);
    const LiteralWeight& lw = w.at(vars[i]);
    d.weights.push_back(lw);
    if (lw.high + lw.low != 1.0) d.all_unit = false;
  }
  d.leaves = 1;
  while (d.leaves < vars.size()) d.leaves *= 2;
  d.tree.assign(2 * d.leaves, 1.0);
  for (std::size_t i = 0; i < vars.size(); ++i) d.tree[d.leaves + i] = d.weights[i].high + d.weights[i].low;
  for (std::size_t i = d.leaves; i-- > 1;) d.tree[i] = d.tree[2 * i] * d.tree[2 * i + 1];
  return d;
}

double BddManager::skip(const WmcDomain& d, std::size_t from, std::size_t to) const {
  if (d.all_unit || from >= to) return 1.0;
  double p = 1.0;
  for (std::size_t l = from + d.leaves, r = to + d.leaves; l < r; l /= 2, r /= 2) {
    if (l & 1) p *= d.tree[l++];
    if (r & 1) p *= d.tree[--r];
  }
  return p;
}

double BddManager::wmc_node(NodeRef n, const WmcDomain& d) {
  if (is_terminal(n)) {
    if (!terminal_seen_[n]) {
      terminal_seen_[n] = true;
      ++last_visits_;
    }
    return n == kTrue ? 1.0 : 0.0;
  }
  if (scratch_stamp_[n] == stamp_) return scratch_value_[n];
  const Node nd = nodes_[n];
  const std::uint32_t pos = d.position[nd.var];
  if (pos == kNoPosition) {
    throw Error(ErrorKind::MissingWeight, "no weight for variable '" + labels_[nd.var].name + "'");
  }
  const std::size_t end = d.weights.size();
  auto child_pos = [&](NodeRef c) -> std::size_t {
    return is_terminal(c) ? end : d.position[nodes_[c].var];
  };
  const LiteralWeight& lw = d.weights[pos];
  double hi = wmc_node(nd.hi, d);
  double lo = wmc_node(nd.lo, d);
  double v = lw.high * skip(d, pos + 1, child_pos(nd.hi)) * hi +
             lw.low * skip(d, pos + 1, child_pos(nd.lo)) * lo;
  scratch_stamp_[n] = stamp_;
  scratch_value_[n] = v;
  ++last_visits_;
  return v;
}

double BddManager::wmc(NodeRef root, const WeightFn& w) {
  const WmcDomain& d = prepare(w);
  if (scratch_stamp_.size() < nodes_.size()) {
    scratch_stamp_.resize(nodes_.size(), 0);
    scratch_value_.resize(nodes_.size(), 0.0);
  }
  if (++stamp_ == 0) {
    std::fill(scratch_stamp_.begin(), scratch_stamp_.end(), 0);
    stamp_ = 1;
  }
  last_visits_ = 0;
  terminal_seen_[0] = terminal_seen_[1] = false;
  double v = wmc_node(root, d);
  const std::size_t start =
      is_terminal(root) ? d.weights.size() : static_cast<std::size_t>(d.position[nodes_[root].var]);
  return skip(d, 0, start) * v;
}

std::unordered_map<NodeRef, double> BddManager::wmc_values(NodeRef root, const WeightFn& w) {
  wmc(root, w);
  std::unordered_map<NodeRef, double> out;
  std::vector<NodeRef> stack{root};
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (out.count(n)) continue;
    if (is_terminal(n)) {
      out[n] = n == kTrue ? 1.0 : 0.0;
      continue;
    }
    out[n] = scratch_value_[n];
    stack.push_back(nodes_[n].lo);
    stack.push_back(nodes_[n].hi);
  }
  return out;
}

std::size_t BddManager::node_count(const std::vector<NodeRef>& roots) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeRef> stack(roots.begin(), roots.end());
  std::size_t count = 0;
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (seen[n]) continue;
    seen[n] = 1;
    ++count;
    if (is_terminal(n)) continue;
    stack.push_back(nodes_[n].lo);
    stack.push_back(nodes_[n].hi);
  }
  return count;
}

std::string BddManager::export_dot(const std::vector<std::pair<std::string, NodeRef>>& roots) const {
  std::ostringstream out;
  out << "digraph bdd {\n";
  out << "  node [shape=circle];\n";
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeRef> stack;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    out << "  r" << i << " [shape=plaintext, label=\"" << roots[i].first << "\"];\n";
    out << "  r" << i << " -> n" << roots[i].second << ";\n";
    stack.push_back(roots[i].second);
  }
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (seen[n]) continue;
    seen[n] = 1;
    if (is_terminal(n)) {
      out << "  n" << n << " [shape=box, label=\"" << (n == kTrue ? "T" : "F") << "\"];\n";
      continue;
    }
    const Node& nd = nodes_[n];
    out << "  n" << n << " [label=\"" << labels_[nd.var].name << "\"];\n";
    out << "  n" << n << " -> n" << nd.hi << ";\n";
    out << "  n" << n << " -> n" << nd.lo << " [style=dashed];\n";
    stack.push_back(nd.lo);
    stack.push_back(nd.hi);
  }
  out << "}\n";
  return out.str();
}

}  // namespace bddppl
