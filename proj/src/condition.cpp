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

#include <cctype>

namespace attrspec::condition {

namespace {

enum class Tok {
  Ident,
  Number,
  String,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  Plus,
  Minus,
  Star,
  Slash,
  LParen,
  RParen,
  KwAnd,
  KwOr,
  KwBetween,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Decimal number;
  std::size_t pos;
};

std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      bool dot = false;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) || (text[j] == '.' && !dot))) {
        if (text[j] == '.') dot = true;
        ++j;
      }
      std::string lit(text.substr(i, j - i));
      auto d = Decimal::parse(lit);
      if (!d) throw ParseError(start, "malformed number '" + lit + "'");
      out.push_back({Tok::Number, lit, *d, start});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      std::string low = lower(word);
      if (low == "and") {
        out.push_back({Tok::KwAnd, word, {}, start});
      } else if (low == "or") {
        out.push_back({Tok::KwOr, word, {}, start});
      } else if (low == "between") {
        out.push_back({Tok::KwBetween, word, {}, start});
      } else if (valid_identifier(word)) {
        out.push_back({Tok::Ident, word, {}, start});
      } else {
        throw ParseError(start, "invalid identifier '" + word +
                                    "' (identifiers match [a-z][a-z0-9_]*)");
      }
      i = j;
      continue;
    }
    switch (c) {
      case '\'': {
        std::size_t j = i + 1;
        while (j < text.size() && text[j] != '\'') ++j;
        if (j >= text.size()) throw ParseError(start, "unterminated string literal");
        out.push_back({Tok::String, std::string(text.substr(i + 1, j - i - 1)), {}, start});
        i = j + 1;
        continue;
      }
      case '<':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back({Tok::Le, "<=", {}, start});
          i += 2;
        } else {
          out.push_back({Tok::Lt, "<", {}, start});
          ++i;
        }
        continue;
      case '>':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back({Tok::Ge, ">=", {}, start});
          i += 2;
        } else {
          out.push_back({Tok::Gt, ">", {}, start});
          ++i;
        }
        continue;
      case '=':
        out.push_back({Tok::Eq, "=", {}, start});
        ++i;
        continue;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          out.push_back({Tok::Ne, "!=", {}, start});
          i += 2;
          continue;
        }
        throw ParseError(start, "unexpected character '!'");
      case '+':
        out.push_back({Tok::Plus, "+", {}, start});
        ++i;
        continue;
      case '-':
        out.push_back({Tok::Minus, "-", {}, start});
        ++i;
        continue;
      case '*':
        out.push_back({Tok::Star, "*", {}, start});
        ++i;
        continue;
      case '/':
        out.push_back({Tok::Slash, "/", {}, start});
        ++i;
        continue;
      case '(':
        out.push_back({Tok::LParen, "(", {}, start});
        ++i;
        continue;
      case ')':
        out.push_back({Tok::RParen, ")", {}, start});
        ++i;
        continue;
      default:
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", {}, text.size()});
  return out;
}

const char* describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident:
      return "identifier";
    case Tok::Number:
      return "number";
    case Tok::String:
      return "string";
    case Tok::End:
      return "end of input";
    default:
      return "token";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Expr parse() {
    Expr e = parse_or();
    if (cur().kind != Tok::End) {
      throw ParseError(cur().pos, "unexpected " + token_name(cur()) + " after expression");
    }
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  const Token& prev() const { return toks_[pos_ - 1]; }
  bool accept(Tok k) {
    if (cur().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw ParseError(cur().pos, std::string("expected ") + what);
  }

  static std::string token_name(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return std::string(describe(t)) + " '" + t.text + "'";
  }

  // Same-kind children are spliced in so conjunction chains are always flat;
  // this keeps render/parse a strict round trip.
  static void append_operand(Expr& node, Expr child) {
    if (child.kind == node.kind) {
      for (Expr& grand : child.children) node.children.push_back(std::move(grand));
    } else {
      node.children.push_back(std::move(child));
    }
  }

  Expr parse_or() {
    Expr first = parse_and();
    if (cur().kind != Tok::KwOr) return first;
    Expr node;
    node.kind = Expr::Kind::Or;
    append_operand(node, std::move(first));
    while (accept(Tok::KwOr)) append_operand(node, parse_and());
    return node;
  }

  Expr parse_and() {
    Expr first = parse_cmp();
    if (cur().kind != Tok::KwAnd) return first;
    Expr node;
    node.kind = Expr::Kind::And;
    append_operand(node, std::move(first));
    while (accept(Tok::KwAnd)) append_operand(node, parse_cmp());
    return node;
  }

  Expr parse_cmp() {
    // "(" may open either a boolean group or an arithmetic group; try the
    // boolean reading first and fall back on failure.
    if (cur().kind == Tok::LParen) {
      std::size_t save = pos_;
      ++pos_;
      try {
        Expr inner = parse_or();
        expect(Tok::RParen, "')'");
        switch (cur().kind) {
          case Tok::Lt:
          case Tok::Le:
          case Tok::Gt:
          case Tok::Ge:
          case Tok::Eq:
          case Tok::Ne:
          case Tok::KwBetween:
          case Tok::Plus:
          case Tok::Minus:
          case Tok::Star:
          case Tok::Slash:
            break;  // group was arithmetic after all
          default:
            return inner;
        }
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    Expr lhs = parse_term();
    switch (cur().kind) {
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge:
      case Tok::Eq:
      case Tok::Ne: {
        CmpOp op = to_cmp(cur().kind);
        ++pos_;
        Expr rhs = parse_term();
        check_compare_types(op, lhs, rhs);
        Expr node;
        node.kind = Expr::Kind::Compare;
        node.cmp = op;
        node.children.push_back(std::move(lhs));
        node.children.push_back(std::move(rhs));
        return node;
      }
      case Tok::KwBetween: {
        ++pos_;
        Expr lo = parse_term();
        expect(Tok::KwAnd, "AND between the BETWEEN bounds");
        Expr hi = parse_term();
        if (lo.kind == Expr::Kind::String || hi.kind == Expr::Kind::String) {
          throw ParseError(cur().pos, "BETWEEN bounds must be numeric");
        }
        if (lhs.kind == Expr::Kind::String) {
          throw ParseError(cur().pos, "BETWEEN subject must be numeric");
        }
        Expr node;
        node.kind = Expr::Kind::Between;
        node.children.push_back(std::move(lhs));
        node.children.push_back(std::move(lo));
        node.children.push_back(std::move(hi));
        return node;
      }
      default:
        throw ParseError(cur().pos, "expected operator after " + token_name(prev()));
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    while (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
      ArithOp op = cur().kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      ++pos_;
      Expr rhs = parse_factor();
      lhs = arith_node(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_factor() {
    Expr lhs = parse_atom();
    while (cur().kind == Tok::Star || cur().kind == Tok::Slash) {
      ArithOp op = cur().kind == Tok::Star ? ArithOp::Mul : ArithOp::Div;
      std::size_t op_pos = cur().pos;
      ++pos_;
      Expr rhs = parse_atom();
      if (op == ArithOp::Div && rhs.kind == Expr::Kind::Number && rhs.number.is_zero()) {
        throw ParseError(op_pos, "division by literal zero");
      }
      lhs = arith_node(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Number: {
        Expr e;
        e.kind = Expr::Kind::Number;
        e.number = t.number;
        ++pos_;
        return e;
      }
      case Tok::String: {
        Expr e;
        e.kind = Expr::Kind::String;
        e.text = t.text;
        ++pos_;
        return e;
      }
      case Tok::Ident: {
        Expr e;
        e.kind = Expr::Kind::Ident;
        e.text = t.text;
        ++pos_;
        return e;
      }
      case Tok::LParen: {
        ++pos_;
        Expr inner = parse_term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError(t.pos, "expected value, got " + token_name(t));
    }
  }

  Expr arith_node(ArithOp op, Expr lhs, Expr rhs) {
    if (lhs.kind == Expr::Kind::String || rhs.kind == Expr::Kind::String) {
      throw ParseError(cur().pos, "arithmetic over string literal");
    }
    Expr node;
    node.kind = Expr::Kind::Arith;
    node.arith = op;
    node.children.push_back(std::move(lhs));
    node.children.push_back(std::move(rhs));
    return node;
  }

  static CmpOp to_cmp(Tok k) {
    switch (k) {
      case Tok::Lt:
        return CmpOp::Lt;
      case Tok::Le:
        return CmpOp::Le;
      case Tok::Gt:
        return CmpOp::Gt;
      case Tok::Ge:
        return CmpOp::Ge;
      case Tok::Eq:
        return CmpOp::Eq;
      default:
        return CmpOp::Ne;
    }
  }

  void check_compare_types(CmpOp op, const Expr& lhs, const Expr& rhs) {
    bool ordering = op == CmpOp::Lt || op == CmpOp::Le || op == CmpOp::Gt || op == CmpOp::Ge;
    bool lhs_str = lhs.kind == Expr::Kind::String;
    bool rhs_str = rhs.kind == Expr::Kind::String;
    bool lhs_num = lhs.kind == Expr::Kind::Number || lhs.kind == Expr::Kind::Arith;
    bool rhs_num = rhs.kind == Expr::Kind::Number || rhs.kind == Expr::Kind::Arith;
    if (ordering && (lhs_str || rhs_str)) {
      throw ParseError(cur().pos, "ordering comparison over string literal");
    }
    if ((lhs_str && rhs_num) || (lhs_num && rhs_str)) {
      throw ParseError(cur().pos, "comparison mixes string and number");
    }
  }
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

Decimal eval_number(const Expr& e, const Bindings& b);

const Value& lookup(const std::string& name, const Bindings& b) {
  auto it = b.find(name);
  if (it == b.end()) throw EvalError("unbound identifier '" + name + "'");
  return it->second;
}

Decimal as_number(const Value& v, const std::string& context) {
  if (const auto* d = std::get_if<Decimal>(&v)) return *d;
  throw EvalError("type mismatch: " + context + " is not numeric");
}

Decimal eval_number(const Expr& e, const Bindings& b) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number;
    case Expr::Kind::Ident:
      return as_number(lookup(e.text, b), "'" + e.text + "'");
    case Expr::Kind::Arith: {
      Decimal lhs = eval_number(e.children[0], b);
      Decimal rhs = eval_number(e.children[1], b);
      try {
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
      } catch (const DecimalError& err) {
        throw EvalError(err.what());
      }
      throw EvalError("unreachable");
    }
    case Expr::Kind::String:
      throw EvalError("type mismatch: string in numeric context");
    default:
      throw EvalError("boolean expression in numeric context");
  }
}

bool compare_values(CmpOp op, const Expr& lhs, const Expr& rhs, const Bindings& b) {
  // String equality is allowed when either side is a string literal or a
  // string-bound identifier; ordering comparisons are numeric only.
  auto side_value = [&](const Expr& e) -> Value {
    if (e.kind == Expr::Kind::String) return e.text;
    if (e.kind == Expr::Kind::Ident) return lookup(e.text, b);
    return eval_number(e, b);
  };
  Value l = side_value(lhs);
  Value r = side_value(rhs);
  bool equality = op == CmpOp::Eq || op == CmpOp::Ne;
  if (std::holds_alternative<std::string>(l) || std::holds_alternative<std::string>(r)) {
    if (!equality) throw EvalError("type mismatch: ordering comparison over string");
    if (!std::holds_alternative<std::string>(l) || !std::holds_alternative<std::string>(r)) {
      throw EvalError("type mismatch: comparison mixes string and number");
    }
    bool eq = std::get<std::string>(l) == std::get<std::string>(r);
    return op == CmpOp::Eq ? eq : !eq;
  }
  if (std::holds_alternative<bool>(l) || std::holds_alternative<bool>(r)) {
    throw EvalError("type mismatch: boolean value in comparison");
  }
  int c = std::get<Decimal>(l).compare(std::get<Decimal>(r));
  switch (op) {
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

void collect_idents(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Ident) out.insert(e.text);
  for (const Expr& c : e.children) collect_idents(c, out);
}

// Precedence levels for minimal-parenthesis rendering.
int level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Or:
      return 0;
    case Expr::Kind::And:
      return 1;
    case Expr::Kind::Compare:
    case Expr::Kind::Between:
      return 2;
    case Expr::Kind::Arith:
      return e.arith == ArithOp::Add || e.arith == ArithOp::Sub ? 3 : 4;
    default:
      return 5;
  }
}

void render_to(const Expr& e, std::string& out);

void render_child(const Expr& child, int parent_level, bool right_side, std::string& out) {
  int child_level = level(child);
  bool parens = child_level < parent_level || (right_side && child_level == parent_level);
  if (parens) out += '(';
  render_to(child, out);
  if (parens) out += ')';
}

void render_to(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Or:
    case Expr::Kind::And: {
      const char* kw = e.kind == Expr::Kind::Or ? " OR " : " AND ";
      int lvl = level(e);
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += kw;
        render_child(e.children[i], lvl, false, out);
      }
      return;
    }
    case Expr::Kind::Compare: {
      static const char* ops[] = {"<", "<=", ">", ">=", "=", "!="};
      render_child(e.children[0], 3, false, out);
      out += ' ';
      out += ops[static_cast<int>(e.cmp)];
      out += ' ';
      render_child(e.children[1], 3, false, out);
      return;
    }
    case Expr::Kind::Between:
      render_child(e.children[0], 3, false, out);
      out += " BETWEEN ";
      render_child(e.children[1], 3, false, out);
      out += " AND ";
      render_child(e.children[2], 3, false, out);
      return;
    case Expr::Kind::Arith: {
      static const char* ops[] = {"+", "-", "*", "/"};
      int lvl = level(e);
      render_child(e.children[0], lvl, false, out);
      out += ' ';
      out += ops[static_cast<int>(e.arith)];
      out += ' ';
      render_child(e.children[1], lvl, true, out);
      return;
    }
    case Expr::Kind::Ident:
      out += e.text;
      return;
    case Expr::Kind::Number:
      out += e.number.str();
      return;
    case Expr::Kind::String:
      out += '\'';
      out += e.text;
      out += '\'';
      return;
  }
}

}  // namespace

bool Expr::operator==(const Expr& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Compare:
      if (cmp != o.cmp) return false;
      break;
    case Kind::Arith:
      if (arith != o.arith) return false;
      break;
    case Kind::Ident:
    case Kind::String:
      return text == o.text;
    case Kind::Number:
      return number == o.number;
    default:
      break;
  }
  if (children.size() != o.children.size()) return false;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (!(children[i] == o.children[i])) return false;
  }
  return true;
}

Expr parse_condition(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError(0, "empty condition");
  }
  return Parser(text).parse();
}

bool evaluate(const Expr& ast, const Bindings& bindings) {
  switch (ast.kind) {
    case Expr::Kind::Or:
      for (const Expr& c : ast.children) {
        if (evaluate(c, bindings)) return true;
      }
      return false;
    case Expr::Kind::And:
      for (const Expr& c : ast.children) {
        if (!evaluate(c, bindings)) return false;
      }
      return true;
    case Expr::Kind::Compare:
      return compare_values(ast.cmp, ast.children[0], ast.children[1], bindings);
    case Expr::Kind::Between: {
      Decimal x = eval_number(ast.children[0], bindings);
      Decimal lo = eval_number(ast.children[1], bindings);
      Decimal hi = eval_number(ast.children[2], bindings);
      return x >= lo && x <= hi;
    }
    default:
      throw EvalError("expression does not evaluate to a boolean");
  }
}

std::set<std::string> free_variables(const Expr& ast) {
  std::set<std::string> out;
  collect_idents(ast, out);
  return out;
}

std::string render(const Expr& ast) {
  std::string out;
  render_to(ast, out);
  return out;
}

}  // namespace attrspec::condition
