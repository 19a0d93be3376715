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

#include "bddppl/value.hpp"

#include <cmath>

#include "bddppl/errors.hpp"

namespace bddppl {

Value Value::boolean(bool b) {
  Value v;
  v.bit_ = b;
  return v;
}

Value Value::pair(Value left, Value right) {
  Value v;
  v.children_ = std::make_shared<const std::pair<Value, Value>>(std::move(left), std::move(right));
  return v;
}

bool Value::as_bool() const {
  if (!is_bool()) throw InternalError("value is not a Boolean");
  return bit_;
}

const Value& Value::left() const {
  if (is_bool()) throw InternalError("value is not a pair");
  return children_->first;
}

const Value& Value::right() const {
  if (is_bool()) throw InternalError("value is not a pair");
  return children_->second;
}

std::string Value::to_string() const {
  if (is_bool()) return bit_ ? "true" : "false";
  return "(" + left().to_string() + ", " + right().to_string() + ")";
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_bool() != b.is_bool()) return false;
  if (a.is_bool()) return a.as_bool() == b.as_bool();
  return a.left() == b.left() && a.right() == b.right();
}

bool operator<(const Value& a, const Value& b) {
  if (a.is_bool() != b.is_bool()) return a.is_bool();
  if (a.is_bool()) return !a.as_bool() && b.as_bool();
  if (a.left() != b.left()) return a.left() < b.left();
  return a.right() < b.right();
}

double total_mass(const Distribution& d) {
  double s = 0.0;
  for (const auto& [v, m] : d) s += m;
  return s;
}

double mass_of(const Distribution& d, const Value& v) {
  auto it = d.find(v);
  return it == d.end() ? 0.0 : it->second;
}

namespace {

void collect(const Value& v, std::vector<bool>& out) {
  if (v.is_bool()) {
    out.push_back(v.as_bool());
    return;
  }
  collect(v.left(), out);
  collect(v.right(), out);
}

Value build(const TypePtr& t, const std::vector<bool>& bits, std::size_t& pos) {
  if (t->is_bool()) {
    if (pos >= bits.size()) throw InternalError("too few leaves for type");
    return Value::boolean(bits[pos++]);
  }
  if (t->is_int()) return build(one_hot_type(t->size()), bits, pos);
  Value l = build(t->left(), bits, pos);
  Value r = build(t->right(), bits, pos);
  return Value::pair(std::move(l), std::move(r));
}

std::vector<Value> enumerate(const TypePtr& t) {
  if (t->is_bool()) return {Value::boolean(false), Value::boolean(true)};
  if (t->is_int()) {
    std::vector<Value> out;
    for (int k = 0; k < t->size(); ++k) out.push_back(one_hot_value(t->size(), k));
    return out;
  }
  std::vector<Value> ls = enumerate(t->left());
  std::vector<Value> rs = enumerate(t->right());
  std::vector<Value> out;
  out.reserve(ls.size() * rs.size());
  for (const Value& l : ls) {
    for (const Value& r : rs) out.push_back(Value::pair(l, r));
  }
  return out;
}

double inhabitant_count(const TypePtr& t) {
  if (t->is_bool()) return 2.0;
  if (t->is_int()) return t->size();
  return inhabitant_count(t->left()) * inhabitant_count(t->right());
}

}  // namespace

std::vector<bool> leaves(const Value& v) {
  std::vector<bool> out;
  collect(v, out);
  return out;
}

Value value_from_leaves(const TypePtr& t, const std::vector<bool>& bits) {
  std::size_t pos = 0;
  Value v = build(t, bits, pos);
  if (pos != bits.size()) throw InternalError("too many leaves for type");
  return v;
}

Value one_hot_value(int n, int k) {
  std::vector<bool> bits(static_cast<std::size_t>(n), false);
  bits.at(static_cast<std::size_t>(k)) = true;
  return value_from_leaves(one_hot_type(n), bits);
}

std::optional<int> one_hot_index(const Value& v, int n) {
  std::vector<bool> bits = leaves(v);
  if (static_cast<int>(bits.size()) != n) return std::nullopt;
  std::optional<int> found;
  for (int i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    if (found) return std::nullopt;
    found = i;
  }
  return found;
}

std::vector<Value> inhabitants(const TypePtr& t, int max_leaves) {
  if (inhabitant_count(t) > std::ldexp(1.0, max_leaves)) {
    throw Error(ErrorKind::OutputTooWide, "output type " + t->to_string() +
                                              " has more than 2^" + std::to_string(max_leaves) +
                                              " values");
  }
  return enumerate(t);
}

std::string format_value(const Value& v, const TypePtr& t) {
  if (t->is_int()) {
    auto k = one_hot_index(v, t->size());
    return k ? std::to_string(*k) : v.to_string();
  }
  if (t->is_bool() || v.is_bool()) return v.to_string();
  return "(" + format_value(v.left(), t->left()) + ", " + format_value(v.right(), t->right()) + ")";
}

}  // namespace bddppl
