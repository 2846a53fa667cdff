#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcap/error.hpp"
#include "tcap/term.hpp"
#include "tcap/type.hpp"

namespace tcap {

namespace detail {

enum class Tok { Ident, Number, LParen, RParen, Colon, Dot, Arrow, Star, Plus, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
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
  while (i < src.size()) {
    unsigned char ch = static_cast<unsigned char>(src[i]);
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    std::size_t l = line, c = col;
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
    } else if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
    } else if (src.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, "->", l, c});
      advance(2);
    } else {
      Tok k;
      switch (ch) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ':': k = Tok::Colon; break;
        case '.': k = Tok::Dot; break;
        case '*': k = Tok::Star; break;
        case '+': k = Tok::Plus; break;
        default: throw ParseError(std::string("unexpected character '") + src[i] + "'", l, c);
      }
      out.push_back({k, std::string(1, src[i]), l, c});
      advance(1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Type parse_type_only() {
    Type t = type();
    expect_end();
    return t;
  }

  Term parse_term_only() {
    Term t = term();
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg + (at.kind == Tok::End ? " at end of input" : " near '" + at.text + "'"), at.line, at.column);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek());
    ++pos_;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected trailing input", peek());
  }

  Type type() {
    Type l = sum_type();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return Type::arrow(l, type());
    }
    return l;
  }

  Type sum_type() {
    Type l = prod_type();
    if (peek().kind == Tok::Plus) {
      ++pos_;
      return Type::sum(l, sum_type());
    }
    return l;
  }

  Type prod_type() {
    Type l = atom_type();
    if (peek().kind == Tok::Star) {
      ++pos_;
      return Type::prod(l, prod_type());
    }
    return l;
  }

  Type atom_type() {
    const Token& t = next();
    if (t.kind == Tok::LParen) {
      Type inner = type();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "N") return Type::nat();
      if (t.text == "Unit") return Type::unit();
      if (t.text == "Empty") return Type::empty();
    }
    fail("expected a type", t);
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident: return peek().text != "fn";
      case Tok::Number:
      case Tok::LParen: return true;
      default: return false;
    }
  }

  Term term() {
    if (peek().kind == Tok::Ident && peek().text == "fn") return lambda();
    if (!starts_atom()) fail("expected a term", peek());
    Term t = atom();
    while (true) {
      if (starts_atom()) {
        t = Term::app(t, atom());
      } else if (peek().kind == Tok::Ident && peek().text == "fn") {
        t = Term::app(t, lambda());
      } else {
        break;
      }
    }
    return t;
  }

  Term lambda() {
    ++pos_;  // fn
    const Token& name = next();
    if (name.kind != Tok::Ident || name.text == "fn") fail("expected a variable name", name);
    if (comb_from_name(name.text)) fail("cannot bind the constant name '" + name.text + "'", name);
    expect(Tok::Colon, "':'");
    Type ty = type();
    expect(Tok::Dot, "'.'");
    scope_.emplace_back(name.text, ty);
    Term body = term();
    scope_.pop_back();
    return Term::lam(name.text, ty, body);
  }

  Term atom() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::LParen: {
        Term inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Number: {
        std::uint64_t n = 0;
        for (char ch : t.text) {
          n = n * 10 + static_cast<std::uint64_t>(ch - '0');
          if (n > 10000) fail("numeral literal too large", t);
        }
        return build::nat(n);
      }
      case Tok::Ident: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == t.text) return Term::var(t.text, it->second);
        if (auto c = comb_from_name(t.text)) return Term::constant(*c);
        fail("unbound name '" + t.text + "'", t);
      }
      default: fail("expected a term", t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, Type>> scope_;
};

}  // namespace detail

/// Parses a type: N | Unit | Empty | T -> T | T * T | T + T | (T).
inline Type parse_type(std::string_view text) { return detail::Parser(text).parse_type_only(); }

/// Parses a closed surface term. Lambdas stay as binder nodes; literals
/// desugar to succ^k zero.
inline Term parse_term(std::string_view text) { return detail::Parser(text).parse_term_only(); }

}  // namespace tcap
