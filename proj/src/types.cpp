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

#include "bddppl/types.hpp"

#include <stdexcept>

namespace bddppl {

TypePtr Type::boolean() {
  static const TypePtr kBool = std::make_shared<const Type>(Kind::Bool, nullptr, nullptr, 0);
  return kBool;
}

TypePtr Type::product(TypePtr left, TypePtr right) {
  return std::make_shared<const Type>(Kind::Prod, std::move(left), std::move(right), 0);
}

TypePtr Type::integer(int size) {
  if (size < 1) throw std::invalid_argument("integer type needs size >= 1");
  return std::make_shared<const Type>(Kind::Int, nullptr, nullptr, size);
}

int Type::leaf_count() const {
  switch (kind_) {
    case Kind::Bool: return 1;
    case Kind::Int: return size_;
    case Kind::Prod: return left_->leaf_count() + right_->leaf_count();
  }
  return 0;
}

bool Type::is_core() const {
  switch (kind_) {
    case Kind::Bool: return true;
    case Kind::Int: return false;
    case Kind::Prod: return left_->is_core() && right_->is_core();
  }
  return false;
}

std::string Type::to_string() const {
  switch (kind_) {
    case Kind::Bool: return "bool";
    case Kind::Int: return "int(" + std::to_string(size_) + ")";
    case Kind::Prod: return "(" + left_->to_string() + ", " + right_->to_string() + ")";
  }
  return "?";
}

bool operator==(const Type& a, const Type& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Bool: return true;
    case Type::Kind::Int: return a.size() == b.size();
    case Type::Kind::Prod: return *a.left() == *b.left() && *a.right() == *b.right();
  }
  return false;
}

bool same_type(const TypePtr& a, const TypePtr& b) {
  if (!a || !b) return a == b;
  return *a == *b;
}

TypePtr one_hot_type(int n) {
  if (n < 1) throw std::invalid_argument("one-hot type needs n >= 1");
  TypePtr t = Type::boolean();
  for (int i = 1; i < n; ++i) t = Type::product(Type::boolean(), t);
  return t;
}

TypePtr lower_type(const TypePtr& t) {
  switch (t->kind()) {
    case Type::Kind::Bool: return t;
    case Type::Kind::Int: return one_hot_type(t->size());
    case Type::Kind::Prod: {
      TypePtr l = lower_type(t->left());
      TypePtr r = lower_type(t->right());
      if (l == t->left() && r == t->right()) return t;
      return Type::product(std::move(l), std::move(r));
    }
  }
  return t;
}

}  // namespace bddppl
