#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "cylnogo/classical.hpp"
#include "cylnogo/operator.hpp"
#include "cylnogo/quantize.hpp"

namespace cylnogo {

// Lexical or syntactic failure, carrying the 0-based input offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset),
        message_(message) {}

  std::size_t offset() const { return offset_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

// Named quantization maps available to Q{...}(...) inside operator expressions.
using SchemeRegistry = std::map<std::string, QuantScheme>;

namespace detail_parse {

struct Token {
  enum class Kind {
    ident,
    integer,
    plus,
    minus,
    star,
    caret,
    slash,
    lparen,
    rparen,
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    comma,
    end
  };
  Kind kind = Kind::end;
  std::string text;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string src) : src_(std::move(src)) {}

  Token next() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) return {Token::Kind::end, "", at};
    const char ch = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t e = pos_;
      while (e < src_.size() &&
             std::isalpha(static_cast<unsigned char>(src_[e])))
        ++e;
      Token t{Token::Kind::ident, src_.substr(pos_, e - pos_), at};
      pos_ = e;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t e = pos_;
      while (e < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[e])))
        ++e;
      Token t{Token::Kind::integer, src_.substr(pos_, e - pos_), at};
      pos_ = e;
      return t;
    }
    ++pos_;
    switch (ch) {
      case '+': return {Token::Kind::plus, "+", at};
      case '-': return {Token::Kind::minus, "-", at};
      case '*': return {Token::Kind::star, "*", at};
      case '^': return {Token::Kind::caret, "^", at};
      case '/': return {Token::Kind::slash, "/", at};
      case '(': return {Token::Kind::lparen, "(", at};
      case ')': return {Token::Kind::rparen, ")", at};
      case '[': return {Token::Kind::lbracket, "[", at};
      case ']': return {Token::Kind::rbracket, "]", at};
      case '{': return {Token::Kind::lbrace, "{", at};
      case '}': return {Token::Kind::rbrace, "}", at};
      case ',': return {Token::Kind::comma, ",", at};
      default:
        throw ParseError(at, std::string("unexpected character '") + ch + "'");
    }
  }

  // Verbatim scan from the current position up to (not including) `stop`.
  std::string take_until(char stop) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] != stop) ++pos_;
    if (pos_ >= src_.size())
      throw ParseError(pos_, std::string("missing '") + stop + "'");
    std::string out = src_.substr(start, pos_ - start);
    ++pos_;  // consume the stop character
    return out;
  }

 private:
  std::string src_;
  std::size_t pos_ = 0;
};

struct Cursor {
  Lexer lex;
  Token cur;
  const SchemeRegistry* schemes = nullptr;

  explicit Cursor(const std::string& src, const SchemeRegistry* reg = nullptr)
      : lex(src), schemes(reg) {
    advance();
  }

  void advance() { cur = lex.next(); }

  void expect(Token::Kind k, const char* what) {
    if (cur.kind != k) throw ParseError(cur.offset, std::string("expected ") + what);
    advance();
  }

  void expect_end() {
    if (cur.kind != Token::Kind::end)
      throw ParseError(cur.offset, "unexpected trailing input");
  }

  // cur is an integer token: INT or INT/INT.
  Rat rational() {
    const boost::multiprecision::cpp_int num(cur.text);
    advance();
    if (cur.kind != Token::Kind::slash) return Rat(num);
    advance();
    if (cur.kind != Token::Kind::integer)
      throw ParseError(cur.offset, "expected denominator");
    const boost::multiprecision::cpp_int den(cur.text);
    if (den == 0) throw ParseError(cur.offset, "zero denominator");
    advance();
    return Rat(num, den);
  }

  struct BracketInt {
    long long value = 0;
    std::size_t offset = 0;
  };

  // [n] with optional sign.
  BracketInt bracket_int() {
    expect(Token::Kind::lbracket, "'['");
    bool neg = false;
    if (cur.kind == Token::Kind::minus) {
      neg = true;
      advance();
    } else if (cur.kind == Token::Kind::plus) {
      advance();
    }
    if (cur.kind != Token::Kind::integer)
      throw ParseError(cur.offset, "expected integer");
    BracketInt out;
    out.offset = cur.offset;
    try {
      out.value = std::stoll(cur.text);
    } catch (const std::exception&) {
      throw ParseError(cur.offset, "integer out of range");
    }
    if (neg) out.value = -out.value;
    advance();
    expect(Token::Kind::rbracket, "']'");
    return out;
  }

  unsigned exponent() {
    if (cur.kind != Token::Kind::integer)
      throw ParseError(cur.offset, "expected exponent");
    unsigned long e = 0;
    try {
      e = std::stoul(cur.text);
    } catch (const std::exception&) {
      throw ParseError(cur.offset, "exponent out of range");
    }
    if (e > 4096) throw ParseError(cur.offset, "exponent out of range");
    advance();
    return static_cast<unsigned>(e);
  }

  // Scalar-valued identifier atoms shared by both grammars; the identifier
  // token has already been consumed.
  std::optional<Scalar> scalar_ident(const Token& id) {
    if (id.text == "i") return Scalar::i();
    if (id.text == "xi") {
      const BracketInt n = bracket_int();
      if (n.value < -kXiBound || n.value > kXiBound)
        throw ParseError(n.offset, "xi index out of range");
      return Scalar::xi(static_cast<int>(n.value));
    }
    if (auto p = named_param_from(id.text)) return Scalar::param(*p);
    return std::nullopt;
  }
};

ClassicalElement c_expr(Cursor& c);
OperatorElement o_expr(Cursor& c);

inline ClassicalElement c_atom(Cursor& c) {
  using K = Token::Kind;
  if (c.cur.kind == K::lparen) {
    c.advance();
    ClassicalElement v = c_expr(c);
    c.expect(K::rparen, "')'");
    return v;
  }
  if (c.cur.kind == K::integer) return ClassicalElement(Scalar(c.rational()));
  if (c.cur.kind == K::ident) {
    const Token id = c.cur;
    c.advance();
    if (id.text == "l") return ClassicalElement::ell();
    if (id.text == "sin") return ClassicalElement::sin_theta();
    if (id.text == "cos") return ClassicalElement::cos_theta();
    if (id.text == "E") {
      const auto m = c.bracket_int();
      return ClassicalElement::harmonic(static_cast<int>(m.value));
    }
    if (id.text == "PB") {
      c.expect(K::lparen, "'('");
      ClassicalElement f = c_expr(c);
      c.expect(K::comma, "','");
      ClassicalElement g = c_expr(c);
      c.expect(K::rparen, "')'");
      return poisson_bracket(f, g);
    }
    if (id.text == "Lad") {
      const auto k = c.bracket_int();
      c.expect(K::lparen, "'('");
      ClassicalElement f = c_expr(c);
      c.expect(K::rparen, "')'");
      return f.ladder(static_cast<int>(k.value));
    }
    if (id.text == "conj") {
      c.expect(K::lparen, "'('");
      ClassicalElement f = c_expr(c);
      c.expect(K::rparen, "')'");
      return f.conj();
    }
    if (auto s = c.scalar_ident(id)) return ClassicalElement(*s);
    throw ParseError(id.offset, "unknown name '" + id.text + "'");
  }
  throw ParseError(c.cur.offset, "expected expression");
}

inline ClassicalElement c_power(Cursor& c) {
  ClassicalElement v = c_atom(c);
  if (c.cur.kind == Token::Kind::caret) {
    c.advance();
    v = v.pow(c.exponent());
  }
  return v;
}

inline ClassicalElement c_unary(Cursor& c) {
  if (c.cur.kind == Token::Kind::minus) {
    c.advance();
    return -c_unary(c);
  }
  return c_power(c);
}

inline ClassicalElement c_term(Cursor& c) {
  ClassicalElement v = c_unary(c);
  while (c.cur.kind == Token::Kind::star) {
    c.advance();
    v = v * c_unary(c);
  }
  return v;
}

inline ClassicalElement c_expr(Cursor& c) {
  ClassicalElement v = c_term(c);
  while (c.cur.kind == Token::Kind::plus || c.cur.kind == Token::Kind::minus) {
    const bool neg = c.cur.kind == Token::Kind::minus;
    c.advance();
    ClassicalElement r = c_term(c);
    v = neg ? v - r : v + r;
  }
  return v;
}

inline OperatorElement o_atom(Cursor& c) {
  using K = Token::Kind;
  if (c.cur.kind == K::lparen) {
    c.advance();
    OperatorElement v = o_expr(c);
    c.expect(K::rparen, "')'");
    return v;
  }
  if (c.cur.kind == K::integer) return OperatorElement(Scalar(c.rational()));
  if (c.cur.kind == K::ident) {
    const Token id = c.cur;
    c.advance();
    if (id.text == "D") return OperatorElement::D();
    if (id.text == "Xi") return OperatorElement::Xi();
    if (id.text == "I") return OperatorElement::identity();
    if (id.text == "E") {
      const auto m = c.bracket_int();
      return OperatorElement::E(m.value);
    }
    if (id.text == "Comm") {
      c.expect(K::lparen, "'('");
      OperatorElement a = o_expr(c);
      c.expect(K::comma, "','");
      OperatorElement b = o_expr(c);
      c.expect(K::rparen, "')'");
      return commutator(a, b);
    }
    if (id.text == "Adj") {
      c.expect(K::lparen, "'('");
      OperatorElement a = o_expr(c);
      c.expect(K::rparen, "')'");
      return a.adjoint();
    }
    if (id.text == "Q") {
      if (c.cur.kind != K::lbrace)
        throw ParseError(c.cur.offset, "expected '{'");
      // Lookahead already consumed '{'; scan the scheme name verbatim.
      const std::size_t name_at = c.cur.offset + 1;
      const std::string name = c.lex.take_until('}');
      c.advance();
      const QuantScheme* scheme = nullptr;
      if (c.schemes) {
        auto it = c.schemes->find(name);
        if (it != c.schemes->end()) scheme = &it->second;
      }
      if (!scheme) throw ParseError(name_at, "unknown scheme '" + name + "'");
      c.expect(K::lparen, "'('");
      ClassicalElement f = c_expr(c);
      c.expect(K::rparen, "')'");
      return scheme->quantize(f);
    }
    if (auto s = c.scalar_ident(id)) return OperatorElement(*s);
    throw ParseError(id.offset, "unknown name '" + id.text + "'");
  }
  throw ParseError(c.cur.offset, "expected expression");
}

inline OperatorElement o_power(Cursor& c) {
  OperatorElement v = o_atom(c);
  if (c.cur.kind == Token::Kind::caret) {
    c.advance();
    v = v.pow(c.exponent());
  }
  return v;
}

inline OperatorElement o_unary(Cursor& c) {
  if (c.cur.kind == Token::Kind::minus) {
    c.advance();
    return -o_unary(c);
  }
  return o_power(c);
}

inline OperatorElement o_term(Cursor& c) {
  OperatorElement v = o_unary(c);
  while (c.cur.kind == Token::Kind::star) {
    c.advance();
    v = v * o_unary(c);
  }
  return v;
}

inline OperatorElement o_expr(Cursor& c) {
  OperatorElement v = o_term(c);
  while (c.cur.kind == Token::Kind::plus || c.cur.kind == Token::Kind::minus) {
    const bool neg = c.cur.kind == Token::Kind::minus;
    c.advance();
    OperatorElement r = o_term(c);
    v = neg ? v - r : v + r;
  }
  return v;
}

}  // namespace detail_parse

inline ClassicalElement parse_classical(const std::string& src) {
  detail_parse::Cursor c(src);
  ClassicalElement v = detail_parse::c_expr(c);
  c.expect_end();
  return v;
}

inline OperatorElement parse_operator(const std::string& src,
                                      const SchemeRegistry& schemes = {}) {
  detail_parse::Cursor c(src, &schemes);
  OperatorElement v = detail_parse::o_expr(c);
  c.expect_end();
  return v;
}

}  // namespace cylnogo
