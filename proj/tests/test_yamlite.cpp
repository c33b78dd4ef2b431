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

#include "yamlite.hpp"

#include "doctest.h"

using attrspec::yamlite::Node;
using attrspec::yamlite::parse;
using attrspec::yamlite::ParseError;

TEST_CASE("nested maps, lists, and scalars") {
  Node doc = parse(
      "name: \"Deposit Completion Rate\"\n"
      "update_frequency: daily\n"
      "threshold: 0.15\n"
      "enabled: true\n"
      "sla: T+1\n"
      "nested:\n"
      "  inner: value\n"
      "items:\n"
      "  - id: Q1\n"
      "    question: \"first\"\n"
      "  - id: Q2\n"
      "    question: \"second\"\n");
  REQUIRE(doc.is_map());
  CHECK(doc.get("name")->scalar == "Deposit Completion Rate");
  CHECK(doc.get("update_frequency")->scalar == "daily");
  CHECK(doc.get("threshold")->is_number());
  CHECK(doc.get("threshold")->number.str() == "0.15");
  CHECK(doc.get("enabled")->is_bool());
  CHECK(doc.get("enabled")->boolean);
  CHECK(doc.get("sla")->is_string());  // T+1 is not a number
  CHECK(doc.get("nested")->get("inner")->scalar == "value");
  const Node* items = doc.get("items");
  REQUIRE(items->is_seq());
  REQUIRE(items->seq.size() == 2);
  CHECK(items->seq[0].get("id")->scalar == "Q1");
  CHECK(items->seq[1].get("question")->scalar == "second");
}

TEST_CASE("flow collections") {
  Node doc = parse(
      "ids: [Q3, Q4, Q7]\n"
      "policy: {enabled: false}\n"
      "mixed: {values: [\"monthly\", 'quarterly'], default: 0.5}\n");
  const Node* ids = doc.get("ids");
  REQUIRE(ids->is_seq());
  CHECK(ids->seq.size() == 3);
  CHECK(ids->seq[2].scalar == "Q7");
  CHECK_FALSE(doc.get("policy")->get("enabled")->boolean);
  const Node* mixed = doc.get("mixed");
  CHECK(mixed->get("values")->seq[1].scalar == "quarterly");
  CHECK(mixed->get("default")->number.str() == "0.5");
}

TEST_CASE("block literals preserve lines and strip common indent") {
  Node doc = parse(
      "query_template: |\n"
      "  SELECT a, b\n"
      "  FROM t\n"
      "  WHERE x = {p}\n"
      "next_key: 1\n");
  CHECK(doc.get("query_template")->scalar == "SELECT a, b\nFROM t\nWHERE x = {p}\n");
  CHECK(doc.get("next_key")->number.str() == "1");
}

TEST_CASE("comments and blank lines are ignored, quotes protect hashes") {
  Node doc = parse(
      "# leading comment\n"
      "\n"
      "key: value  # trailing comment\n"
      "hash: \"a # not a comment\"\n");
  CHECK(doc.get("key")->scalar == "value");
  CHECK(doc.get("hash")->scalar == "a # not a comment");
}

TEST_CASE("unquoted scalars keep punctuation outside flow context") {
  Node doc = parse("text: Results->Process, then Support\n");
  CHECK(doc.get("text")->scalar == "Results->Process, then Support");
}

TEST_CASE("empty input parses to null") {
  CHECK(parse("").is_null());
  CHECK(parse("# only a comment\n").is_null());
}

TEST_CASE("errors carry line numbers") {
  CHECK_THROWS_AS(parse("a: 1\na: 2\n"), ParseError);
  CHECK_THROWS_AS(parse("\tkey: value\n"), ParseError);
  CHECK_THROWS_AS(parse("key: [1, 2\n"), ParseError);
  CHECK_THROWS_AS(parse("key: 'unterminated\n"), ParseError);
  try {
    parse("ok: 1\nbroken\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("duplicate keys in flow maps are rejected") {
  CHECK_THROWS_AS(parse("m: {a: 1, a: 2}\n"), ParseError);
}
