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

#include "decimal.hpp"

#include <random>

#include "doctest.h"

using attrspec::Decimal;
using attrspec::DecimalError;

namespace {

Decimal dec(const char* text) {
  auto d = Decimal::parse(text);
  REQUIRE(d.has_value());
  return *d;
}

}  // namespace

TEST_CASE("decimal parse and canonical rendering") {
  CHECK(dec("0.15").str() == "0.15");
  CHECK(dec("0.150").str() == "0.15");
  CHECK(dec("3").str() == "3");
  CHECK(dec("-3.20").str() == "-3.2");
  CHECK(dec("0.0").str() == "0");
  CHECK(dec("1240").str() == "1240");

  CHECK_FALSE(Decimal::parse("").has_value());
  CHECK_FALSE(Decimal::parse(".5").has_value());
  CHECK_FALSE(Decimal::parse("1.").has_value());
  CHECK_FALSE(Decimal::parse("1e5").has_value());
  CHECK_FALSE(Decimal::parse("1.2.3").has_value());
  CHECK_FALSE(Decimal::parse("--1").has_value());
}

TEST_CASE("decimal comparisons are exact") {
  CHECK(dec("0.15") == dec("0.150"));
  CHECK(dec("0.1") < dec("0.15"));
  CHECK(dec("0.2") > dec("0.15"));
  // The visit-frequency threshold: 0.7 * 5.83 = 4.081 exactly.
  CHECK(dec("0.7") * dec("5.83") == dec("4.081"));
  CHECK_FALSE(dec("4.2") < dec("4.081"));
  CHECK(dec("4.0") < dec("0.7") * dec("6.0"));
}

TEST_CASE("decimal arithmetic") {
  CHECK((dec("1.0") - dec("0.88")).str() == "0.12");
  CHECK((dec("0.1") + dec("0.2")).str() == "0.3");
  CHECK((dec("110") * dec("1.5")).str() == "165");
  CHECK((dec("-2.5") * dec("4")).str() == "-10");
  CHECK((dec("1") / dec("4")).str() == "0.25");
  CHECK((dec("67") / dec("100")).str() == "0.67");
  CHECK((-dec("3.5")).str() == "-3.5");
}

TEST_CASE("division truncates beyond max scale and rejects zero") {
  CHECK_THROWS_AS(dec("1") / dec("0"), DecimalError);
  Decimal third = dec("1") / dec("3");
  CHECK(third.scale() == Decimal::kMaxScale);
  CHECK(third.str() == "0.333333333333333333");
  CHECK((dec("-1") / dec("3")).str() == "-0.333333333333333333");
}

TEST_CASE("decimal add/sub/mul agree with integer arithmetic") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long long> dist(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    long long a = dist(rng);
    long long b = dist(rng);
    // Interpret as fixed-point with two fractional digits: a/100, b/100.
    Decimal da(a, 2);
    Decimal db(b, 2);
    CHECK(da + db == Decimal(a + b, 2));
    CHECK(da - db == Decimal(a - b, 2));
    CHECK(da * db == Decimal(a * b, 4));
    CHECK((da < db) == (a < b));
  }
}
