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

#include <algorithm>
#include <cctype>

namespace attrspec::yamlite {

namespace {

struct Line {
  int number;      // 1-based
  int indent;      // leading spaces
  std::string text;  // content with indent and trailing comment removed
};

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

// Removes a trailing comment, respecting quotes. A '#' starts a comment only
// at the start of content or after whitespace.
std::string strip_comment(std::string_view s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      continue;
    }
    if (c == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
      return std::string(s.substr(0, i));
    }
  }
  return std::string(s);
}

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  return s;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Node scalar_node(std::string text, int line) {
  Node n;
  n.line = line;
  if (text.empty()) {
    n.kind = Node::Kind::Null;
    return n;
  }
  if (text == "true" || text == "false") {
    n.kind = Node::Kind::Bool;
    n.boolean = text == "true";
    n.scalar = std::move(text);
    return n;
  }
  if (text == "null" || text == "~") {
    n.kind = Node::Kind::Null;
    return n;
  }
  if (auto d = Decimal::parse(text)) {
    n.kind = Node::Kind::Number;
    n.number = *d;
    n.scalar = std::move(text);
    return n;
  }
  n.kind = Node::Kind::String;
  n.scalar = std::move(text);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) { split(text); }

  Node parse_document() {
    if (lines_.empty()) return Node{};
    Node root = parse_block(0);
    if (pos_ != lines_.size()) {
      throw ParseError(lines_[pos_].number, "content at unexpected indentation");
    }
    return root;
  }

 private:
  std::vector<Line> lines_;
  std::vector<std::string> raw_;  // all physical lines, for block literals
  std::size_t pos_ = 0;

  void split(std::string_view text) {
    std::size_t start = 0;
    int number = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(start, end - start);
      ++number;
      raw_.emplace_back(raw);
      std::string content = rtrim(strip_comment(raw));
      if (!is_blank(content)) {
        std::size_t indent = 0;
        while (indent < content.size() && content[indent] == ' ') ++indent;
        if (indent < content.size() && content[indent] == '\t') {
          throw ParseError(number, "tabs are not allowed in indentation");
        }
        lines_.push_back({number, static_cast<int>(indent), content.substr(indent)});
      }
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  const Line& cur() const { return lines_[pos_]; }
  bool done() const { return pos_ >= lines_.size(); }

  Node parse_block(int indent) {
    if (done() || cur().indent < indent) {
      Node n;
      n.line = done() ? 0 : cur().number;
      return n;
    }
    int at = cur().indent;
    if (cur().text.rfind("- ", 0) == 0 || cur().text == "-") {
      return parse_seq(at);
    }
    return parse_map(at);
  }

  Node parse_seq(int indent) {
    Node n;
    n.kind = Node::Kind::Seq;
    n.line = cur().number;
    while (!done() && cur().indent == indent &&
           (cur().text.rfind("- ", 0) == 0 || cur().text == "-")) {
      const Line line = cur();
      std::string rest = line.text == "-" ? "" : trim(line.text.substr(2));
      ++pos_;
      if (rest.empty()) {
        n.seq.push_back(parse_block(indent + 1));
        continue;
      }
      // "- key: value" opens an inline map whose further keys sit two
      // columns deeper, aligned under the first key.
      std::size_t colon = find_key_colon(rest);
      if (colon != std::string::npos) {
        Node item = parse_map_entryfirst(rest, colon, line, indent + 2);
        n.seq.push_back(std::move(item));
      } else {
        n.seq.push_back(parse_flow_or_scalar(rest, line.number));
      }
    }
    if (!done() && cur().indent > indent) {
      throw ParseError(cur().number, "unexpected indentation inside sequence");
    }
    return n;
  }

  Node parse_map(int indent) {
    Node n;
    n.kind = Node::Kind::Map;
    n.line = cur().number;
    while (!done() && cur().indent == indent) {
      const Line line = cur();
      if (line.text.rfind("- ", 0) == 0 || line.text == "-") {
        throw ParseError(line.number, "sequence item inside mapping");
      }
      std::size_t colon = find_key_colon(line.text);
      if (colon == std::string::npos) {
        throw ParseError(line.number, "expected 'key:' in mapping, got '" + line.text + "'");
      }
      std::string key = unquote_key(trim(line.text.substr(0, colon)), line.number);
      std::string value = trim(line.text.substr(colon + 1));
      ++pos_;
      Node child = parse_value(value, line, indent);
      for (const auto& [k, unused] : n.map) {
        (void)unused;
        if (k == key) throw ParseError(line.number, "duplicate key '" + key + "'");
      }
      n.map.emplace_back(std::move(key), std::move(child));
    }
    if (!done() && cur().indent > indent) {
      throw ParseError(cur().number, "unexpected indentation inside mapping");
    }
    return n;
  }

  // Map whose first entry shares the sequence dash line.
  Node parse_map_entryfirst(const std::string& text, std::size_t colon, const Line& line,
                            int cont_indent) {
    Node n;
    n.kind = Node::Kind::Map;
    n.line = line.number;
    std::string key = unquote_key(trim(text.substr(0, colon)), line.number);
    std::string value = trim(text.substr(colon + 1));
    Node first = parse_value(value, line, cont_indent - 2);
    n.map.emplace_back(std::move(key), std::move(first));
    while (!done() && cur().indent == cont_indent &&
           !(cur().text.rfind("- ", 0) == 0 || cur().text == "-")) {
      const Line l = cur();
      std::size_t c = find_key_colon(l.text);
      if (c == std::string::npos) {
        throw ParseError(l.number, "expected 'key:' in mapping, got '" + l.text + "'");
      }
      std::string k = unquote_key(trim(l.text.substr(0, c)), l.number);
      std::string v = trim(l.text.substr(c + 1));
      ++pos_;
      Node child = parse_value(v, l, cont_indent);
      for (const auto& [existing, unused] : n.map) {
        (void)unused;
        if (existing == k) throw ParseError(l.number, "duplicate key '" + k + "'");
      }
      n.map.emplace_back(std::move(k), std::move(child));
    }
    return n;
  }

  Node parse_value(const std::string& value, const Line& line, int key_indent) {
    if (value.empty()) {
      if (!done() && cur().indent > key_indent) return parse_block(key_indent + 1);
      Node n;
      n.line = line.number;
      return n;  // key with no value and no nested block
    }
    if (value == "|" || value == "|-") {
      return parse_block_literal(line, key_indent, value == "|-");
    }
    return parse_flow_or_scalar(value, line.number);
  }

  Node parse_block_literal(const Line& line, int key_indent, bool strip_final) {
    // Collect raw physical lines deeper than the key until indentation falls
    // back; dedent by the first content line's indent.
    Node n;
    n.kind = Node::Kind::String;
    n.line = line.number;
    std::size_t raw_idx = static_cast<std::size_t>(line.number);  // line after the key
    int content_indent = -1;
    std::vector<std::string> out;
    while (raw_idx < raw_.size()) {
      const std::string& raw = raw_[raw_idx];
      if (is_blank(raw)) {
        out.emplace_back("");
        ++raw_idx;
        continue;
      }
      int ind = 0;
      while (ind < static_cast<int>(raw.size()) && raw[ind] == ' ') ++ind;
      if (ind <= key_indent) break;
      if (content_indent < 0) content_indent = ind;
      if (ind < content_indent) break;
      out.push_back(rtrim(raw.substr(content_indent)));
      ++raw_idx;
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    std::string text;
    for (const auto& l : out) {
      text += l;
      text += '\n';
    }
    if (strip_final && !text.empty()) text.pop_back();
    n.scalar = std::move(text);
    // Advance the logical cursor past consumed lines.
    while (!done() && static_cast<std::size_t>(cur().number) <= raw_idx) ++pos_;
    return n;
  }

  Node parse_flow_or_scalar(const std::string& text, int line) {
    std::size_t i = 0;
    Node n = parse_flow(text, i, line, /*in_flow=*/false);
    if (i != text.size()) throw ParseError(line, "trailing content after value");
    return n;
  }

  Node parse_flow(const std::string& s, std::size_t& i, int line, bool in_flow) {
    skip_spaces(s, i);
    if (i >= s.size()) return scalar_node("", line);
    char c = s[i];
    if (c == '[') return parse_flow_seq(s, i, line);
    if (c == '{') return parse_flow_map(s, i, line);
    if (c == '\'' || c == '"') {
      Node n;
      n.kind = Node::Kind::String;
      n.line = line;
      n.scalar = parse_quoted(s, i, line);
      skip_spaces(s, i);
      return n;
    }
    // Bare scalar; delimiters only apply inside flow collections.
    std::size_t start = i;
    if (in_flow) {
      while (i < s.size() && s[i] != ',' && s[i] != ']' && s[i] != '}') ++i;
    } else {
      i = s.size();
    }
    return scalar_node(trim(s.substr(start, i - start)), line);
  }

  Node parse_flow_seq(const std::string& s, std::size_t& i, int line) {
    Node n;
    n.kind = Node::Kind::Seq;
    n.line = line;
    ++i;  // [
    skip_spaces(s, i);
    if (i < s.size() && s[i] == ']') {
      ++i;
      return n;
    }
    while (true) {
      n.seq.push_back(parse_flow(s, i, line, /*in_flow=*/true));
      skip_spaces(s, i);
      if (i >= s.size()) throw ParseError(line, "unterminated flow sequence");
      if (s[i] == ',') {
        ++i;
        continue;
      }
      if (s[i] == ']') {
        ++i;
        return n;
      }
      throw ParseError(line, "expected ',' or ']' in flow sequence");
    }
  }

  Node parse_flow_map(const std::string& s, std::size_t& i, int line) {
    Node n;
    n.kind = Node::Kind::Map;
    n.line = line;
    ++i;  // {
    skip_spaces(s, i);
    if (i < s.size() && s[i] == '}') {
      ++i;
      return n;
    }
    while (true) {
      skip_spaces(s, i);
      std::string key;
      if (i < s.size() && (s[i] == '\'' || s[i] == '"')) {
        key = parse_quoted(s, i, line);
      } else {
        std::size_t start = i;
        while (i < s.size() && s[i] != ':' && s[i] != ',' && s[i] != '}') ++i;
        key = trim(s.substr(start, i - start));
      }
      skip_spaces(s, i);
      if (i >= s.size() || s[i] != ':') throw ParseError(line, "expected ':' in flow mapping");
      ++i;
      Node value = parse_flow(s, i, line, /*in_flow=*/true);
      for (const auto& [k, unused] : n.map) {
        (void)unused;
        if (k == key) throw ParseError(line, "duplicate key '" + key + "'");
      }
      n.map.emplace_back(std::move(key), std::move(value));
      skip_spaces(s, i);
      if (i >= s.size()) throw ParseError(line, "unterminated flow mapping");
      if (s[i] == ',') {
        ++i;
        continue;
      }
      if (s[i] == '}') {
        ++i;
        return n;
      }
      throw ParseError(line, "expected ',' or '}' in flow mapping");
    }
  }

  static void skip_spaces(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }

  static std::string parse_quoted(const std::string& s, std::size_t& i, int line) {
    char quote = s[i];
    ++i;
    std::string out;
    while (i < s.size() && s[i] != quote) {
      out += s[i];
      ++i;
    }
    if (i >= s.size()) throw ParseError(line, "unterminated quoted string");
    ++i;  // closing quote
    return out;
  }

  static std::string unquote_key(const std::string& key, int line) {
    if (key.empty()) throw ParseError(line, "empty mapping key");
    if (key.front() == '\'' || key.front() == '"') {
      if (key.size() < 2 || key.back() != key.front()) {
        throw ParseError(line, "unterminated quoted key");
      }
      return key.substr(1, key.size() - 2);
    }
    return key;
  }

  // Finds the colon that separates key from value, skipping quoted spans.
  // The colon must be last on the line or followed by a space.
  static std::size_t find_key_colon(const std::string& s) {
    char quote = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      if (quote != 0) {
        if (c == quote) quote = 0;
        continue;
      }
      if (c == '\'' || c == '"') {
        quote = c;
        continue;
      }
      if (c == ':' && (i + 1 == s.size() || s[i + 1] == ' ')) return i;
    }
    return std::string::npos;
  }
};

}  // namespace

const Node* Node::get(std::string_view key) const {
  if (!is_map()) return nullptr;
  for (const auto& [k, v] : map) {
    if (k == key) return &v;
  }
  return nullptr;
}

Node parse(std::string_view text) { return Parser(text).parse_document(); }

}  // namespace attrspec::yamlite
