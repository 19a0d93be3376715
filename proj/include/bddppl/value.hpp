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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bddppl/types.hpp"

namespace bddppl {

/// A closed value: a Boolean or a pair. Integers are represented by their
/// one-hot tuples.
class Value {
 public:
  Value() = default;
  static Value boolean(bool b);
  static Value pair(Value left, Value right);

  bool is_bool() const noexcept { return !children_; }
  bool as_bool() const;
  const Value& left() const;
  const Value& right() const;

  std::string to_string() const;

 private:
  bool bit_ = false;
  std::shared_ptr<const std::pair<Value, Value>> children_;
};

bool operator==(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }
/// Total order: false < true, Booleans before pairs, pairs lexicographic.
bool operator<(const Value& a, const Value& b);

/// Map from values to (possibly unnormalized) mass. Absent values have mass 0.
using Distribution = std::map<Value, double>;

double total_mass(const Distribution& d);
double mass_of(const Distribution& d, const Value& v);

/// Leaves of `v`, left to right.
std::vector<bool> leaves(const Value& v);
/// Inverse of `leaves` for a core type.
Value value_from_leaves(const TypePtr& core_type, const std::vector<bool>& bits);

/// One-hot tuple with `n` leaves and leaf `k` set (a bare Bool for n=1).
Value one_hot_value(int n, int k);
/// Index of the set leaf when `v` is a one-hot tuple of `n` leaves.
std::optional<int> one_hot_index(const Value& v, int n);

/// Every value of `t`, in a fixed order: left leaves are most significant and
/// false precedes true. `Int(n)` contributes its n one-hot values in index
/// order. Throws OutputTooWide when there are more than 2^max_leaves values.
std::vector<Value> inhabitants(const TypePtr& t, int max_leaves = 20);

/// Renders `v` at type `t`, showing integers as numbers.
std::string format_value(const Value& v, const TypePtr& t);

}  // namespace bddppl
