#include "dw/poly_parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "dw/error.hpp"

namespace dw {

namespace {

constexpr unsigned kMaxExponent = 1000;

enum class Tok { Ident, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const auto ch = static_cast<unsigned char>(text[i]);
    if (ch >= 0x80) throw ParseError("non-ASCII character", line, column);
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    const std::size_t l = line, c = column;
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      tokens.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && (text[j] == '.' || text[j] == 'e' || text[j] == 'E')) {
        throw ParseError("decimal literals are not exact; use p/q", l, c);
      }
      tokens.push_back({Tok::Int, std::string(text.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '=': kind = Tok::Equals; break;
      default:
        throw ParseError(std::string("unexpected character '") + static_cast<char>(ch) + "'", l, c);
    }
    tokens.push_back({kind, std::string(1, static_cast<char>(ch)), l, c});
    advance(1);
  }
  tokens.push_back({Tok::End, "", line, column});
  return tokens;
}

class Parser {
 public:
  Parser(std::string_view text, const IdentifierHandler& identifiers)
      : tokens_(tokenize(text)), identifiers_(identifiers) {}

  ParsedEquation equation(bool allow_equals) {
    ParsedEquation eq;
    eq.lhs = expr();
    if (peek().kind == Tok::Equals) {
      if (!allow_equals) fail("unexpected '='");
      next();
      eq.rhs = expr();
      eq.has_rhs = true;
    }
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return eq;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, peek().line, peek().column);
  }
  [[noreturn]] void fail_at(const std::string& what, const Token& t) const {
    throw ParseError(what, t.line, t.column);
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      MultiPoly rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = next();
      const Token& at = peek();
      MultiPoly rhs = factor();
      if (op.kind == Tok::Star) {
        acc *= rhs;
        continue;
      }
      if (!rhs.is_constant()) fail_at("non-polynomial construct: division by non-constant", at);
      if (rhs.is_zero()) fail_at("division by zero", at);
      acc = acc.scaled(rhs.constant_term().inverse());
    }
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = atom();
    if (peek().kind == Tok::Caret) {
      next();
      if (peek().kind != Tok::Int) {
        fail("non-polynomial construct: fractional or negative power (exponent must be an unsigned integer literal)");
      }
      const Token t = next();
      if (t.text.size() > 4 || std::stoul(t.text) > kMaxExponent) fail_at("exponent too large", t);
      base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  MultiPoly atom() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Minus:
        next();
        return -factor();
      case Tok::LParen: {
        next();
        MultiPoly inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Int: {
        next();
        mpz_class num(t.text);
        mpz_class den = 1;
        if (peek().kind == Tok::Slash && tokens_[pos_ + 1].kind == Tok::Int) {
          next();
          const Token d = next();
          den = mpz_class(d.text);
          if (den == 0) fail_at("division by zero", d);
        }
        return MultiPoly(QuadExt(Rat(num, den)));
      }
      case Tok::Ident: {
        next();
        if (t.text == "sqrt") {
          expect(Tok::LParen, "'(' after sqrt");
          if (peek().kind != Tok::Int) fail("sqrt takes a nonnegative integer literal");
          const Token n = next();
          expect(Tok::RParen, "')'");
          try {
            return MultiPoly(QuadExt::sqrt_of(mpz_class(n.text)));
          } catch (const Error& e) {
            fail_at(e.what(), n);
          }
        }
        return identifiers_(t.text, t.line, t.column);
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const IdentifierHandler& identifiers_;
};

}  // namespace

ParsedEquation parse_equation(std::string_view text, const IdentifierHandler& identifiers) {
  return Parser(text, identifiers).equation(true);
}

MultiPoly parse_expression(std::string_view text, const IdentifierHandler& identifiers) {
  return Parser(text, identifiers).equation(false).lhs;
}

MultiPoly parse_poly(std::string_view text, const RegistryPtr& registry) {
  IdentifierHandler handler = [&](const std::string& name, std::size_t, std::size_t) {
    return MultiPoly::variable(registry, name);
  };
  return parse_expression(text, handler).with_registry(registry);
}

QuadExt parse_constant(std::string_view text) {
  IdentifierHandler handler = [](const std::string& name, std::size_t line, std::size_t column) -> MultiPoly {
    throw ParseError("unexpected identifier '" + name + "' in constant", line, column);
  };
  return parse_expression(text, handler).constant_term();
}

}  // namespace dw
