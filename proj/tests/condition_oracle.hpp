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

// Test-only condition oracle: a brute-force interpreter (no short circuit)
// plus a random well-typed condition generator. Deliberately independent of
// the production evaluator so the two can check each other.

#pragma once

#include <random>

#include "condition.hpp"
#include "test_support.hpp"

namespace condition_oracle {

using namespace attrspec::condition;
using attrspec::Decimal;

inline Decimal dec(const char* text) { return *Decimal::parse(text); }

// Independent oracle: direct recursive evaluation without short-circuiting.
// Kept deliberately separate from the production evaluator.
inline Decimal brute_number(const Expr& e, const Bindings& b);

inline bool brute_eval(const Expr& e, const Bindings& b) {
  switch (e.kind) {
    case Expr::Kind::Or: {
      bool any = false;
      for (const Expr& c : e.children) {
        bool v = brute_eval(c, b);
        any = any || v;
      }
      return any;
    }
    case Expr::Kind::And: {
      bool all = true;
      for (const Expr& c : e.children) {
        bool v = brute_eval(c, b);
        all = all && v;
      }
      return all;
    }
    case Expr::Kind::Compare: {
      const Expr& lhs = e.children[0];
      const Expr& rhs = e.children[1];
      bool string_side = lhs.kind == Expr::Kind::String || rhs.kind == Expr::Kind::String;
      if (!string_side && lhs.kind == Expr::Kind::Ident) {
        string_side = std::holds_alternative<std::string>(b.at(lhs.text));
      }
      if (string_side) {
        auto side = [&](const Expr& s) -> std::string {
          if (s.kind == Expr::Kind::String) return s.text;
          return std::get<std::string>(b.at(s.text));
        };
        bool eq = side(lhs) == side(rhs);
        return e.cmp == CmpOp::Eq ? eq : !eq;
      }
      int c = brute_number(lhs, b).compare(brute_number(rhs, b));
      switch (e.cmp) {
        case CmpOp::Lt:
          return c < 0;
        case CmpOp::Le:
          return c <= 0;
        case CmpOp::Gt:
          return c > 0;
        case CmpOp::Ge:
          return c >= 0;
        case CmpOp::Eq:
          return c == 0;
        case CmpOp::Ne:
          return c != 0;
      }
      return false;
    }
    case Expr::Kind::Between: {
      Decimal x = brute_number(e.children[0], b);
      Decimal lo = brute_number(e.children[1], b);
      Decimal hi = brute_number(e.children[2], b);
      bool ge = !(x < lo);
      bool le = !(hi < x);
      return ge && le;
    }
    default:
      throw EvalError("oracle: non-boolean node");
  }
}

inline Decimal brute_number(const Expr& e, const Bindings& b) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number;
    case Expr::Kind::Ident:
      return std::get<Decimal>(b.at(e.text));
    case Expr::Kind::Arith: {
      Decimal lhs = brute_number(e.children[0], b);
      Decimal rhs = brute_number(e.children[1], b);
      switch (e.arith) {
        case ArithOp::Add:
          return lhs + rhs;
        case ArithOp::Sub:
          return lhs - rhs;
        case ArithOp::Mul:
          return lhs * rhs;
        case ArithOp::Div:
          return lhs / rhs;
      }
      throw EvalError("oracle: bad arith op");
    }
    default:
      throw EvalError("oracle: non-numeric node");
  }
}

// Random well-typed condition generator. Numeric identifiers draw from
// x1..x5 (bound nonzero so division stays defined); string identifiers from
// s1..s2.
struct Generator {
  std::mt19937 rng;
  explicit Generator(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Expr number() {
    Expr e;
    e.kind = Expr::Kind::Number;
    attrspec::Decimal d = testsupport::random_decimal(rng, 99, 2, /*nonzero=*/true);
    e.number = d.is_negative() ? -d : d;  // the grammar has no unary minus
    return e;
  }

  Expr numeric_ident() {
    Expr e;
    e.kind = Expr::Kind::Ident;
    e.text = "x" + std::to_string(pick(5) + 1);
    return e;
  }

  Expr term(int depth) {
    if (depth <= 0 || pick(3) == 0) return pick(2) == 0 ? number() : numeric_ident();
    Expr e;
    e.kind = Expr::Kind::Arith;
    e.arith = static_cast<ArithOp>(pick(4));
    e.children.push_back(term(depth - 1));
    // Keep divisors away from zero: identifiers are bound nonzero and
    // literal divisors are nonzero by construction.
    e.children.push_back(e.arith == ArithOp::Div ? (pick(2) == 0 ? number() : numeric_ident())
                                                 : term(depth - 1));
    return e;
  }

  Expr comparison(int depth) {
    if (pick(5) == 0) {
      Expr e;
      e.kind = Expr::Kind::Compare;
      e.cmp = pick(2) == 0 ? CmpOp::Eq : CmpOp::Ne;
      Expr lhs;
      lhs.kind = Expr::Kind::Ident;
      lhs.text = "s" + std::to_string(pick(2) + 1);
      Expr rhs;
      rhs.kind = Expr::Kind::String;
      static const char* kPool[] = {"alpha", "beta", "gamma"};
      rhs.text = kPool[pick(3)];
      e.children.push_back(std::move(lhs));
      e.children.push_back(std::move(rhs));
      return e;
    }
    if (pick(4) == 0) {
      Expr e;
      e.kind = Expr::Kind::Between;
      e.children.push_back(term(depth - 1));
      e.children.push_back(term(depth - 1));
      e.children.push_back(term(depth - 1));
      return e;
    }
    Expr e;
    e.kind = Expr::Kind::Compare;
    e.cmp = static_cast<CmpOp>(pick(6));
    e.children.push_back(term(depth - 1));
    e.children.push_back(term(depth - 1));
    return e;
  }

  Expr boolean(int depth) {
    if (depth <= 0 || pick(3) == 0) return comparison(depth);
    Expr e;
    e.kind = pick(2) == 0 ? Expr::Kind::And : Expr::Kind::Or;
    int n = 2 + pick(2);
    for (int i = 0; i < n; ++i) {
      Expr child = comparison(depth - 1);
      if (pick(4) == 0 && depth >= 2) {
        Expr nested = boolean(depth - 1);
        if (nested.kind != e.kind) child = std::move(nested);
      }
      e.children.push_back(std::move(child));
    }
    return e;
  }

  Bindings bindings() {
    Bindings b;
    for (int i = 1; i <= 5; ++i) {
      b["x" + std::to_string(i)] = testsupport::random_decimal(rng, 99, 2, /*nonzero=*/true);
    }
    static const char* kPool[] = {"alpha", "beta", "gamma"};
    for (int i = 1; i <= 2; ++i) {
      b["s" + std::to_string(i)] = std::string(kPool[pick(3)]);
    }
    return b;
  }
};


}  // namespace condition_oracle
