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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "decimal.hpp"

// Parser for the structured-text subset the layer artifacts use: nested
// block maps and sequences, flow collections ({k: v}, [a, b]), quoted and
// bare scalars, '#' comments, and '|' literal block strings. Indentation is
// spaces only; maps preserve key order.
namespace attrspec::yamlite {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Node {
  enum class Kind { Null, Bool, Number, String, Seq, Map };

  Kind kind = Kind::Null;
  bool boolean = false;
  Decimal number;
  std::string scalar;  // string content (also the raw text of numbers)
  std::vector<Node> seq;
  std::vector<std::pair<std::string, Node>> map;
  int line = 0;

  bool is_null() const { return kind == Kind::Null; }
  bool is_bool() const { return kind == Kind::Bool; }
  bool is_number() const { return kind == Kind::Number; }
  bool is_string() const { return kind == Kind::String; }
  bool is_scalar() const { return kind == Kind::Bool || kind == Kind::Number || kind == Kind::String; }
  bool is_seq() const { return kind == Kind::Seq; }
  bool is_map() const { return kind == Kind::Map; }

  const Node* get(std::string_view key) const;
  bool has(std::string_view key) const { return get(key) != nullptr; }
};

// Parses a whole document. Empty (or comment-only) input yields a Null node.
// Throws ParseError on malformed input, including duplicate map keys.
Node parse(std::string_view text);

}  // namespace attrspec::yamlite
