/*
 * Copyright (c) 2026, The lintrack Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lintrack/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace lintrack {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* kSymbols[] = {":=", "==", "&&", "||", "..", "{", "}", "(", ")", ",", ";",
                                   ":",  ".",  "+",  "-",  "*",  "<", "!", "#"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t start_line = line, start_col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), start_line, start_col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), start_line, start_col});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* sym : kSymbols) {
      std::string_view s(sym);
      if (src.substr(i, s.size()) == s) {
        out.push_back({Tok::Sym, std::string(s), start_line, start_col});
        advance(s.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(start_line, start_col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {
    "object", "uses", "proc", "if",  "else", "do",  "goto", "invoke", "return",
    "true",   "false", "unit", "Arg", "fst",  "snd", "pair", "int_bits"};

// A line before `if` blocks are flattened into goto form.
struct LineItem {
  std::optional<Statement> simple;
  std::optional<Term> cond;
  std::vector<LineItem> then_items;
  std::vector<LineItem> else_items;
  bool has_else = false;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Implementation parse_file() {
    Implementation impl;
    collect_variables();
    impl.variables = variables_;
    if (accept_word("int_bits")) impl.int_bits = static_cast<int>(parse_int_token());
    expect_word("object");
    impl.name = expect_ident("object name");
    expect(":");
    impl.object_spec = parse_builtin();
    expect_word("uses");
    expect("{");
    while (!accept("}")) {
      BaseObjectDecl decl;
      const Token& at = peek();
      decl.name = expect_ident("base object name");
      for (const auto& d : impl.base_decls)
        if (d.name == decl.name) fail(at, "base object " + decl.name + " declared twice");
      expect(":");
      decl.spec = parse_builtin();
      impl.base_decls.push_back(std::move(decl));
      if (!accept(",")) accept(";");
    }
    decls_ = &impl.base_decls;
    while (peek().kind != Tok::End) {
      const Token& at = peek();
      expect_word("proc");
      std::string op = expect_ident("operation name");
      if (impl.procedures.count(op)) fail(at, "procedure " + op + " defined twice");
      expect("(");
      if (!accept("*")) impl.invoke_domain[op] = parse_domain();
      expect(")");
      expect("{");
      std::vector<LineItem> items;
      while (!accept("}")) items.push_back(parse_line());
      Procedure body;
      flatten(items, body.lines);
      impl.procedures.emplace(std::move(op), std::move(body));
    }
    return impl;
  }

  Val parse_value() {
    const Token& t = peek();
    if (accept("-")) return Val::integer(-parse_int_token());
    if (t.kind == Tok::Int) return Val::integer(parse_int_token());
    if (accept_word("true")) return Val::boolean(true);
    if (accept_word("false")) return Val::boolean(false);
    if (accept_word("unit")) return Val::unit();
    if (accept("(")) {
      Val a = parse_value();
      expect(",");
      Val b = parse_value();
      expect(")");
      return Val::pair(std::move(a), std::move(b));
    }
    fail(t, "expected a value");
  }

  std::vector<Val> parse_domain_only() { return parse_domain(); }

  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"));
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  bool accept(std::string_view sym) {
    if (peek().kind == Tok::Sym && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail(peek(), "expected '" + std::string(sym) + "'");
  }
  bool accept_word(std::string_view w) {
    if (peek().kind == Tok::Ident && peek().text == w) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail(peek(), "expected '" + std::string(w) + "'");
  }
  std::string expect_ident(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kKeywords.count(t.text)) fail(t, "expected " + what);
    ++pos_;
    return t.text;
  }
  std::int64_t parse_int_token() {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail(t, "expected an integer");
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail(t, "integer literal out of range");
    ++pos_;
    return v;
  }

  // Any identifier directly followed by ':=' is a variable of the implementation.
  void collect_variables() {
    std::set<std::string> names;
    for (std::size_t k = 0; k + 1 < toks_.size(); ++k)
      if (toks_[k].kind == Tok::Ident && toks_[k + 1].kind == Tok::Sym && toks_[k + 1].text == ":=" &&
          !kKeywords.count(toks_[k].text))
        names.insert(toks_[k].text);
    variables_.assign(names.begin(), names.end());
  }

  VarRef resolve(const Token& t) const {
    auto it = std::lower_bound(variables_.begin(), variables_.end(), t.text);
    if (it == variables_.end() || *it != t.text) fail(t, "undeclared variable " + t.text);
    return VarRef{static_cast<std::size_t>(it - variables_.begin()), t.text};
  }

  std::vector<Val> parse_domain() {
    if (peek().kind == Tok::Int || (peek().kind == Tok::Sym && peek().text == "-" && peek(1).kind == Tok::Int &&
                                    peek(2).kind == Tok::Sym && peek(2).text == "..")) {
      const Token& at = peek();
      std::int64_t lo = accept("-") ? -parse_int_token() : parse_int_token();
      expect("..");
      std::int64_t hi = accept("-") ? -parse_int_token() : parse_int_token();
      if (hi < lo || hi - lo > 4096) fail(at, "bad range domain");
      std::vector<Val> out;
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(Val::integer(v));
      return out;
    }
    expect("{");
    std::vector<Val> out;
    if (!accept("}")) {
      do out.push_back(parse_value());
      while (accept(","));
      expect("}");
    }
    return out;
  }

  BuiltinSpec parse_builtin() {
    const Token& at = peek();
    std::string kind_name = expect_ident("builtin object type");
    auto kind = builtin_kind_from_name(kind_name);
    if (!kind) fail(at, "unknown builtin object type " + kind_name);
    BuiltinSpec spec;
    spec.kind = *kind;
    expect("(");
    spec.domain = parse_domain();
    std::sort(spec.domain.begin(), spec.domain.end());
    spec.domain.erase(std::unique(spec.domain.begin(), spec.domain.end()), spec.domain.end());
    expect(",");
    if (spec.kind == BuiltinSpec::Kind::Queue) {
      spec.capacity = static_cast<std::size_t>(parse_int_token());
    } else {
      spec.init = parse_value();
    }
    expect(")");
    return spec;
  }

  term::Invoke parse_call() {
    const Token& at = peek();
    std::string obj = expect_ident("base object name");
    expect(".");
    const Token& op_tok = peek();
    std::string op = expect_ident("operation name");
    std::size_t index = 0;
    bool found = false;
    for (; index < decls_->size(); ++index)
      if ((*decls_)[index].name == obj) {
        found = true;
        break;
      }
    if (!found) fail(at, "unknown base object " + obj);
    auto inst = instantiate((*decls_)[index].spec);
    if (!inst.type->has_op(op)) fail(op_tok, "base object " + obj + " has no operation " + op);
    expect("(");
    Term a = parse_term();
    expect(")");
    return term::Invoke{index, obj, op, std::move(a)};
  }

  Term parse_term() { return parse_binary(0); }

  Term parse_binary(int level) {
    static const std::vector<std::vector<std::pair<std::string_view, BinaryOp>>> kLevels = {
        {{"||", BinaryOp::Or}},
        {{"&&", BinaryOp::And}},
        {{"==", BinaryOp::Eq}},
        {{"<", BinaryOp::Lt}},
        {{"+", BinaryOp::Add}, {"-", BinaryOp::Sub}},
        {{"*", BinaryOp::Mul}},
    };
    if (level == static_cast<int>(kLevels.size())) return parse_unary();
    Term lhs = parse_binary(level + 1);
    for (;;) {
      bool matched = false;
      for (const auto& [sym, op] : kLevels[level]) {
        if (accept(sym)) {
          lhs = term::Binary{op, std::move(lhs), parse_binary(level + 1)};
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  Term parse_unary() {
    if (accept("!")) return term::Not{parse_unary()};
    if (accept("-")) return term::IntLit{-parse_int_token()};
    return parse_primary();
  }

  Term parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) return term::IntLit{parse_int_token()};
    if (accept("(")) {
      Term inner = parse_term();
      expect(")");
      return inner;
    }
    if (accept_word("true")) return term::BoolLit{true};
    if (accept_word("false")) return term::BoolLit{false};
    if (accept_word("unit")) return term::UnitLit{};
    if (accept_word("Arg")) return term::ArgRef{};
    if (accept_word("fst") || accept_word("snd")) {
      bool left = toks_[pos_ - 1].text == "fst";
      expect("(");
      Term e = parse_term();
      expect(")");
      if (left) return term::ProjL{std::move(e)};
      return term::ProjR{std::move(e)};
    }
    if (accept_word("pair")) {
      expect("(");
      Term a = parse_term();
      expect(",");
      Term b = parse_term();
      expect(")");
      return term::MkPair{std::move(a), std::move(b)};
    }
    if (accept_word("invoke")) return parse_call();
    if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
      ++pos_;
      return term::Var{resolve(t)};
    }
    fail(t, "expected a term");
  }

  // Simple statement shared by top-level lines and `do` blocks.
  std::optional<Statement> parse_simple() {
    const Token& t = peek();
    if (accept_word("goto")) return stmt::Goto{static_cast<std::size_t>(parse_int_token())};
    if (accept_word("return")) return stmt::Return{parse_term()};
    if (accept_word("invoke")) return stmt::Invoke{parse_call()};
    if (accept_word("do")) {
      expect("{");
      return parse_inner_items();
    }
    if (t.kind == Tok::Ident && !kKeywords.count(t.text) && peek(1).kind == Tok::Sym && peek(1).text == ":=") {
      ++pos_;
      VarRef target = resolve(t);
      expect(":=");
      return stmt::Assign{std::move(target), parse_term()};
    }
    return std::nullopt;
  }

  Statement parse_inner() {
    const Token& t = peek();
    if (accept_word("if")) {
      Term c = parse_term();
      expect("{");
      Statement a = parse_inner_items();
      expect_word("else");
      expect("{");
      Statement b = parse_inner_items();
      return stmt::If{std::move(c), std::move(a), std::move(b)};
    }
    if (auto s = parse_simple()) return std::move(*s);
    fail(t, "expected a statement");
  }

  // Items up to and including the closing '}', right-nested into Seq.
  Statement parse_inner_items() {
    std::vector<Statement> items;
    while (!accept("}")) {
      items.push_back(parse_inner());
      if (!accept(";")) {
        expect("}");
        break;
      }
    }
    if (items.empty()) fail(toks_[pos_ - 1], "empty block");
    Statement acc = std::move(items.back());
    for (std::size_t k = items.size() - 1; k-- > 0;) acc = stmt::Seq{std::move(items[k]), std::move(acc)};
    return acc;
  }

  LineItem parse_if_block() {
    LineItem item;
    item.cond = parse_term();
    expect("{");
    while (!accept("}")) item.then_items.push_back(parse_line());
    if (accept_word("else")) {
      item.has_else = true;
      if (accept_word("if")) {
        item.else_items.push_back(parse_if_block());
      } else {
        expect("{");
        while (!accept("}")) item.else_items.push_back(parse_line());
      }
    }
    return item;
  }

  LineItem parse_line() {
    const Token& t = peek();
    if (accept_word("if")) return parse_if_block();
    auto s = parse_simple();
    if (!s) fail(t, "expected a statement");
    expect(";");
    LineItem item;
    item.simple = std::move(*s);
    return item;
  }

  static void flatten(const std::vector<LineItem>& items, std::vector<Statement>& out) {
    for (const auto& item : items) {
      if (item.simple) {
        out.push_back(*item.simple);
        continue;
      }
      std::size_t head = out.size();
      out.push_back(stmt::Goto{0});
      flatten(item.then_items, out);
      std::size_t skip_else = out.size();
      if (item.has_else) out.push_back(stmt::Goto{0});
      std::size_t else_start = out.size();
      flatten(item.else_items, out);
      std::size_t end = out.size();
      out[head] = stmt::If{*item.cond, Statement(stmt::Goto{head + 1}), Statement(stmt::Goto{else_start})};
      if (item.has_else) out[skip_else] = stmt::Goto{end};
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> variables_;
  const std::vector<BaseObjectDecl>* decls_ = nullptr;
};

}  // namespace

Implementation parse_implementation(std::string_view source) {
  Parser p(tokenize(source));
  Implementation impl = p.parse_file();
  finalize(impl);
  return impl;
}

Implementation load_implementation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_implementation(buf.str());
  } catch (const LoadError& e) {
    throw LoadError(path + ":" + e.what());
  }
}

Val parse_value(std::string_view text) {
  Parser p(tokenize(text));
  Val v = p.parse_value();
  p.expect_end();
  return v;
}

std::vector<Val> parse_domain(std::string_view text) {
  Parser p(tokenize(text));
  auto values = p.parse_domain_only();
  p.expect_end();
  return values;
}

}  // namespace lintrack
