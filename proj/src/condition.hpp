// Copyright 2026 The Attrspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "decimal.hpp"

// Rule-condition language used by the dual-track policies. Grammar:
//
//   expr   := or
//   or     := and ("OR" and)*
//   and    := cmp ("AND" cmp)*
//   cmp    := term op term
//           | term "BETWEEN" term "AND" term          (inclusive both ends)
//           | "(" expr ")"
//   term   := factor (("+" | "-") factor)*
//   factor := atom (("*" | "/") atom)*
//   atom   := number | 'string' | identifier | "(" term ")"
//   op     := "<" | "<=" | ">" | ">=" | "=" | "!="
//
// Keywords are case-insensitive; the "AND" inside BETWEEN binds to BETWEEN.
// Identifiers match [a-z][a-z0-9_]*. Numbers are exact decimals. There is no
// NOT operator.
namespace attrspec::condition {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };
enum class ArithOp { Add, Sub, Mul, Div };

struct Expr {
  enum class Kind { Or, And, Compare, Between, Arith, Ident, Number, String };

  Kind kind = Kind::Number;
  CmpOp cmp = CmpOp::Eq;
  ArithOp arith = ArithOp::Add;
  std::vector<Expr> children;  // Or/And: 2+; Compare: lhs,rhs; Between: x,lo,hi; Arith: lhs,rhs
  std::string text;            // identifier name or string literal
  Decimal number;

  bool operator==(const Expr& o) const;
};

using Value = std::variant<Decimal, std::string, bool>;
using Bindings = std::map<std::string, Value>;

// Throws ParseError with the offending position.
Expr parse_condition(std::string_view text);

// Strict short-circuit evaluation. Throws EvalError for unbound identifiers,
// type mismatches, and zero divisors. Never mutates the bindings.
bool evaluate(const Expr& ast, const Bindings& bindings);

// Identifier leaves, deduplicated and sorted.
std::set<std::string> free_variables(const Expr& ast);

// Canonical text: uppercase keywords, single spaces, minimal parentheses.
// parse_condition(render(ast)) reproduces ast exactly.
std::string render(const Expr& ast);

}  // namespace attrspec::condition
