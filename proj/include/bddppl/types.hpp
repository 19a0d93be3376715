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

#include <memory>
#include <string>

namespace bddppl {

class Type;
using TypePtr = std::shared_ptr<const Type>;

/// Value types. `Bool` and `Prod` make up the core language; `Int(n)` is a
/// bounded integer that lowers to an n-leaf one-hot tuple.
class Type {
 public:
  enum class Kind { Bool, Prod, Int };

  static TypePtr boolean();
  static TypePtr product(TypePtr left, TypePtr right);
  static TypePtr integer(int size);

  Kind kind() const noexcept { return kind_; }
  bool is_bool() const noexcept { return kind_ == Kind::Bool; }
  bool is_prod() const noexcept { return kind_ == Kind::Prod; }
  bool is_int() const noexcept { return kind_ == Kind::Int; }

  const TypePtr& left() const noexcept { return left_; }
  const TypePtr& right() const noexcept { return right_; }
  int size() const noexcept { return size_; }

  /// Number of Bool leaves after lowering integers.
  int leaf_count() const;
  /// True when no `Int` occurs anywhere in the type.
  bool is_core() const;

  std::string to_string() const;

  Type(Kind kind, TypePtr left, TypePtr right, int size)
      : kind_(kind), left_(std::move(left)), right_(std::move(right)), size_(size) {}

 private:
  Kind kind_;
  TypePtr left_;
  TypePtr right_;
  int size_ = 0;
};

bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }
bool same_type(const TypePtr& a, const TypePtr& b);

/// Replaces every `Int(n)` by its right-nested one-hot tuple `(b0,(b1,...))`.
TypePtr lower_type(const TypePtr& t);

/// Type of a right-nested one-hot tuple with `n` leaves (a bare Bool for n=1).
TypePtr one_hot_type(int n);

}  // namespace bddppl
