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

#include <string>
#include <string_view>

#include "bddppl/ast.hpp"

namespace bddppl {

// Concrete syntax (`.dice` files):
//
//   program  ::= fundef* expr
//   fundef   ::= 'fun' ident '(' ident ':' type (',' ident ':' type)* ')' ':' type '{' expr '}'
//   type     ::= 'bool' | 'int' '(' N ')' | '(' type ',' type (',' type)* ')'
//   expr     ::= 'let' ident '=' expr 'in' expr
//              | 'if' expr 'then' expr 'else' expr
//              | 'observe' expr
//              | eq
//   eq       ::= or ('==' or)*          or  ::= and ('||' and)*
//   and      ::= add ('&&' add)*        add ::= mul ('+' mul)*
//   mul      ::= unary ('*' unary)*     unary ::= '!' unary | 'fst' unary | 'snd' unary | atom
//   atom     ::= 'true' | 'T' | 'false' | 'F' | ident | ident '(' expr (',' expr)* ')'
//              | '(' expr (',' expr)* ')' | 'flip' prob | 'flip' '(' prob ')'
//              | 'discrete' '(' prob (',' prob)* ')' | 'int' '(' N ',' N ')'
//              | 'iterate' '(' ident ',' expr ',' N ')' | 'let' ... | 'if' ... | 'observe' ...
//   prob     ::= number | number '/' number
//
// Binary operators are left-associative. `//` starts a line comment.
// Identifiers starting with "__" are reserved.

Program parse_program(std::string_view text, const std::string& file = "<input>");

/// Renders a program in the concrete syntax above. The output reparses to a
/// structurally identical program.
std::string pretty_print(const Program& program);
std::string pretty_print(const Expr& expr);
std::string pretty_print(const Type& type);

}  // namespace bddppl
