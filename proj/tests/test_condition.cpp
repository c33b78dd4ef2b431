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

#include "condition.hpp"

#include <random>

#include "condition_oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace attrspec::condition;
using attrspec::Decimal;

namespace {

using condition_oracle::brute_eval;
using condition_oracle::Generator;

Decimal dec(const char* text) { return *Decimal::parse(text); }

}  // namespace

TEST_CASE("parses the dual-track fixture conditions") {
  Expr rate = parse_condition("rate > 0.15");
  CHECK(rate.kind == Expr::Kind::Compare);
  CHECK(rate.cmp == CmpOp::Gt);
  CHECK(rate.children[0].kind == Expr::Kind::Ident);
  CHECK(rate.children[0].text == "rate");
  CHECK(rate.children[1].number == dec("0.15"));

  Expr flows = parse_condition("inflow > outflow");
  CHECK(flows.children[0].text == "inflow");
  CHECK(flows.children[1].kind == Expr::Kind::Ident);

  Expr risk = parse_condition("high_risk_customers > total_customers * 0.15");
  CHECK(risk.kind == Expr::Kind::Compare);
  CHECK(risk.children[1].kind == Expr::Kind::Arith);
  CHECK(risk.children[1].arith == ArithOp::Mul);

  Expr combo = parse_condition("penetration_rate < 0.3 AND segment = 'high_value'");
  REQUIRE(combo.kind == Expr::Kind::And);
  REQUIRE(combo.children.size() == 2);
  CHECK(combo.children[0].cmp == CmpOp::Lt);
  CHECK(combo.children[1].cmp == CmpOp::Eq);
  CHECK(combo.children[1].children[1].text == "high_value");

  Expr between = parse_condition("conversion_rate BETWEEN 0.1 AND 0.2");
  REQUIRE(between.kind == Expr::Kind::Between);
  CHECK(between.children[1].number == dec("0.1"));
  CHECK(between.children[2].number == dec("0.2"));
}

TEST_CASE("keywords are case-insensitive and BETWEEN owns its AND") {
  Expr e = parse_condition("x between 1 and 2 and y > 3");
  REQUIRE(e.kind == Expr::Kind::And);
  CHECK(e.children[0].kind == Expr::Kind::Between);
  CHECK(e.children[1].kind == Expr::Kind::Compare);
  CHECK(parse_condition("a > 1 or b > 2").kind == Expr::Kind::Or);
}

TEST_CASE("parse errors carry positions and name the offender") {
  try {
    parse_condition("channel = 'referral' AND volume declining");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()) == "expected operator after identifier 'volume'");
  }
  CHECK_THROWS_AS(parse_condition(""), ParseError);
  CHECK_THROWS_AS(parse_condition("(a > 1"), ParseError);
  CHECK_THROWS_AS(parse_condition("rate >"), ParseError);
  CHECK_THROWS_AS(parse_condition("rate > 'low'"), ParseError);       // ordering over string
  CHECK_THROWS_AS(parse_condition("x BETWEEN 'a' AND 2"), ParseError);  // non-numeric bound
  CHECK_THROWS_AS(parse_condition("x / 0 > 1"), ParseError);          // literal zero divisor
  CHECK_THROWS_AS(parse_condition("Rate > 1"), ParseError);           // bad identifier case
  CHECK_THROWS_AS(parse_condition("x ! y"), ParseError);
}

TEST_CASE("evaluation matches the worked examples") {
  Expr combo = parse_condition("penetration_rate < 0.3 AND segment = 'high_value'");
  Bindings b;
  b["penetration_rate"] = dec("0.24");
  b["segment"] = std::string("high_value");
  CHECK(evaluate(combo, b));
  b["segment"] = std::string("retail");
  CHECK_FALSE(evaluate(combo, b));

  Expr between = parse_condition("conversion_rate BETWEEN 0.1 AND 0.2");
  Bindings c;
  c["conversion_rate"] = dec("0.1");
  CHECK(evaluate(between, c));  // inclusive lower bound
  c["conversion_rate"] = dec("0.2");
  CHECK(evaluate(between, c));  // inclusive upper bound
  c["conversion_rate"] = dec("0.21");
  CHECK_FALSE(evaluate(between, c));

  Expr visits = parse_condition("visit_frequency < branch_avg * 0.7");
  Bindings v;
  v["visit_frequency"] = dec("4.2");
  v["branch_avg"] = dec("5.83");
  CHECK_FALSE(evaluate(visits, v));  // 4.2 < 4.081 is false
  v["visit_frequency"] = dec("4.0");
  v["branch_avg"] = dec("6.0");
  CHECK(evaluate(visits, v));  // 4.0 < 4.2
}

TEST_CASE("evaluation errors") {
  Expr e = parse_condition("rate > 0.15");
  Bindings empty;
  try {
    evaluate(e, empty);
    FAIL("expected EvalError");
  } catch (const EvalError& err) {
    CHECK(std::string(err.what()).find("rate") != std::string::npos);
  }
  Bindings wrong;
  wrong["rate"] = std::string("fast");
  CHECK_THROWS_AS(evaluate(e, wrong), EvalError);

  Expr division = parse_condition("a / b > 1");
  Bindings z;
  z["a"] = dec("1");
  z["b"] = dec("0");
  CHECK_THROWS_AS(evaluate(division, z), EvalError);
}

TEST_CASE("evaluation never mutates bindings") {
  Expr e = parse_condition("a + b > 2 AND a < 10");
  Bindings b;
  b["a"] = dec("1.5");
  b["b"] = dec("2.5");
  Bindings before = b;
  evaluate(e, b);
  CHECK(b == before);
}

TEST_CASE("free_variables collects sorted identifier leaves") {
  auto vars = free_variables(parse_condition("rate > 0.15"));
  CHECK(vars == std::set<std::string>{"rate"});
  vars = free_variables(parse_condition("high_risk_customers > total_customers * 0.15"));
  CHECK(vars == std::set<std::string>{"high_risk_customers", "total_customers"});
  CHECK(free_variables(parse_condition("0.1 < 0.2")).empty());
}

TEST_CASE("canonical rendering") {
  CHECK(render(parse_condition("rate>0.15")) == "rate > 0.15");
  CHECK(render(parse_condition("x between 0.1 and 0.2")) == "x BETWEEN 0.1 AND 0.2");
  CHECK(render(parse_condition("(a > 1 OR b > 2) AND c = 'x'")) ==
        "(a > 1 OR b > 2) AND c = 'x'");
  CHECK(render(parse_condition("a * (b + c) > 2")) == "a * (b + c) > 2");
  CHECK(render(parse_condition("a - (b - c) > 0")) == "a - (b - c) > 0");
}

TEST_CASE("property: render/parse round trip" * doctest::timeout(30)) {
  Generator gen(2026);
  for (int i = 0; i < 1000; ++i) {
    Expr ast = gen.boolean(3);
    std::string text = render(ast);
    CAPTURE(text);
    Expr reparsed = parse_condition(text);
    CHECK(reparsed == ast);
  }
}

TEST_CASE("property: evaluator agrees with the brute-force oracle" * doctest::timeout(30)) {
  Generator gen(99);
  int fired = 0;
  for (int i = 0; i < 1000; ++i) {
    Expr ast = gen.boolean(3);
    Bindings b = gen.bindings();
    CAPTURE(render(ast));
    bool expected = brute_eval(ast, b);
    bool actual = evaluate(ast, b);
    CHECK(actual == expected);
    if (actual) ++fired;
  }
  CHECK(fired > 100);  // the generator produces a healthy mix
  CHECK(fired < 900);
}

TEST_CASE("property: BETWEEN equals the inclusive conjunction" * doctest::timeout(30)) {
  Generator gen(4242);
  for (int i = 0; i < 1000; ++i) {
    Bindings b;
    b["x"] = testsupport::random_decimal(gen.rng, 50, 2);
    b["lo"] = testsupport::random_decimal(gen.rng, 50, 2);
    b["hi"] = testsupport::random_decimal(gen.rng, 50, 2);
    Expr between = parse_condition("x BETWEEN lo AND hi");
    Expr conjunction = parse_condition("x >= lo AND x <= hi");
    CHECK(evaluate(between, b) == evaluate(conjunction, b));
  }
}
