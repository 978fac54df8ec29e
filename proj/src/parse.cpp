#include <cctype>
#include <optional>
#include <sstream>

#include "weylq/polynomial.hpp"
#include "weylq/weyl.hpp"

namespace weylq {

/*
 * Shared expression grammar (whitespace insignificant):
 *   expr   := ['+'|'-'] term { ('+'|'-') term }
 *   term   := factor { '*' factor }
 *   factor := atom [ '^' nat ]
 *   atom   := nat [ '/' nat ] | var | '(' expr ')'
 * Classical variables are q1..qN, p1..pN; bare q,p alias q1,p1 when n = 1.
 * Operator expressions additionally accept the atoms i, hbar and I, and
 * multiply in written order (noncommutatively).
 */

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    size_t start = i_;
    if (i_ >= s_.size()) {
      tok_ = {Tok::End, "", start};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {Tok::Number, s_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_ = {Tok::Ident, s_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {Tok::Plus, "+", start}; return;
      case '-': tok_ = {Tok::Minus, "-", start}; return;
      case '*': tok_ = {Tok::Star, "*", start}; return;
      case '^': tok_ = {Tok::Caret, "^", start}; return;
      case '/': tok_ = {Tok::Slash, "/", start}; return;
      case '(': tok_ = {Tok::LParen, "(", start}; return;
      case ')': tok_ = {Tok::RParen, ")", start}; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_{Tok::End, "", 0};
};

// Resolves q/p idents to a variable index; returns nullopt for other idents.
std::optional<std::pair<char, int>> resolve_variable(const Token& t, int n) {
  const std::string& s = t.text;
  if (s.empty() || (s[0] != 'q' && s[0] != 'p')) return std::nullopt;
  if (s.size() == 1) {
    if (n != 1) {
      throw ParseError("variable '" + s + "' needs an index when n > 1", t.pos);
    }
    return std::make_pair(s[0], 0);
  }
  for (size_t k = 1; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
  }
  int idx = std::stoi(s.substr(1));
  if (idx < 1 || idx > n) {
    throw ParseError("variable index out of range in '" + s + "' (n = " +
                         std::to_string(n) + ")",
                     t.pos);
  }
  return std::make_pair(s[0], idx - 1);
}

unsigned parse_exponent(Lexer& lex) {
  Token t = lex.take();
  if (t.kind != Tok::Number) throw ParseError("expected exponent", t.pos);
  unsigned long v = std::stoul(t.text);
  return static_cast<unsigned>(v);
}

Rational parse_rational_literal(Lexer& lex) {
  Token t = lex.take();
  Rational num(t.text);
  if (lex.peek().kind == Tok::Slash) {
    lex.take();
    Token d = lex.take();
    if (d.kind != Tok::Number) throw ParseError("expected denominator", d.pos);
    Rational den(d.text);
    if (sgn(den) == 0) throw ParseError("zero denominator", d.pos);
    num /= den;
  }
  return num;
}

// ---- classical polynomials ----

class PolyParser {
 public:
  PolyParser(const std::string& text, int n) : lex_(text), n_(n) {}

  Polynomial parse() {
    Polynomial f = expr();
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("unexpected token '" + lex_.peek().text + "'", lex_.peek().pos);
    }
    return f;
  }

 private:
  Polynomial expr() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      neg = lex_.take().kind == Tok::Minus;
    }
    Polynomial acc = term();
    if (neg) acc = -acc;
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool minus = lex_.take().kind == Tok::Minus;
      Polynomial t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (lex_.peek().kind == Tok::Star) {
      lex_.take();
      acc = acc * factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial a = atom();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      a = a.pow(parse_exponent(lex_));
    }
    return a;
  }

  Polynomial atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number:
        return Polynomial::constant(n_, parse_rational_literal(lex_));
      case Tok::Ident: {
        Token id = lex_.take();
        auto var = resolve_variable(id, n_);
        if (!var) throw ParseError("unknown variable '" + id.text + "'", id.pos);
        return var->first == 'q' ? Polynomial::variable_q(n_, var->second)
                                 : Polynomial::variable_p(n_, var->second);
      }
      case Tok::LParen: {
        lex_.take();
        Polynomial inner = expr();
        Token close = lex_.take();
        if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
        return inner;
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  Lexer lex_;
  int n_;
};

// ---- operator expressions ----

class WeylParser {
 public:
  WeylParser(const std::string& text, int n) : lex_(text), n_(n) {}

  WeylElement parse() {
    WeylElement a = expr();
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("unexpected token '" + lex_.peek().text + "'", lex_.peek().pos);
    }
    return a;
  }

 private:
  WeylElement expr() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      neg = lex_.take().kind == Tok::Minus;
    }
    WeylElement acc = term();
    if (neg) acc = -acc;
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool minus = lex_.take().kind == Tok::Minus;
      WeylElement t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  WeylElement term() {
    WeylElement acc = factor();
    while (lex_.peek().kind == Tok::Star) {
      lex_.take();
      acc = weyl_mul(acc, factor());
    }
    return acc;
  }

  WeylElement factor() {
    WeylElement a = atom();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      a = weyl_pow(a, parse_exponent(lex_));
    }
    return a;
  }

  WeylElement atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number:
        return WeylElement::scalar(n_, HScalar::rational(parse_rational_literal(lex_)));
      case Tok::Ident: {
        Token id = lex_.take();
        if (id.text == "i") return WeylElement::scalar(n_, HScalar::i_unit());
        if (id.text == "hbar") return WeylElement::scalar(n_, HScalar::hbar());
        if (id.text == "I") return WeylElement::identity(n_);
        auto var = resolve_variable(id, n_);
        if (!var) throw ParseError("unknown symbol '" + id.text + "'", id.pos);
        return var->first == 'q' ? WeylElement::q(n_, var->second)
                                 : WeylElement::p(n_, var->second);
      }
      case Tok::LParen: {
        lex_.take();
        WeylElement inner = expr();
        Token close = lex_.take();
        if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
        return inner;
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  Lexer lex_;
  int n_;
};

std::string variable_name(int n, bool is_p, int i) {
  std::string base = is_p ? "p" : "q";
  if (n == 1) return base;
  return base + std::to_string(i + 1);
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, int n) {
  if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  return PolyParser(text, n).parse();
}

WeylElement parse_weyl(const std::string& text, int n) {
  if (n <= 0) throw std::invalid_argument("dimension n must be positive");
  return WeylParser(text, n).parse();
}

std::string monomial_to_string(const Monomial& m) {
  int n = m.dim();
  std::string out;
  auto emit = [&](bool is_p, int i, std::uint32_t e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += variable_name(n, is_p, i);
    if (e > 1) out += "^" + std::to_string(e);
  };
  for (int i = 0; i < n; ++i) emit(false, i, m.q_exp(i));
  for (int i = 0; i < n; ++i) emit(true, i, m.p_exp(i));
  return out;
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  // Leading (highest) terms first.
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const Monomial& m = it->first;
    const Rational& c = it->second;
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string ms = m.is_unit() ? "" : monomial_to_string(m);
    if (ms.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += ms;
    } else {
      out += to_string(mag) + "*" + ms;
    }
  }
  return out;
}

std::string to_string(const WeylElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  auto emit = [&](const Rational& value, bool imaginary, unsigned hbar_power,
                  const Monomial& m) {
    if (sgn(value) == 0) return;
    bool negative = sgn(value) < 0;
    Rational mag = abs(value);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::vector<std::string> factors;
    if (mag != 1) factors.push_back(to_string(mag));
    if (imaginary) factors.push_back("i");
    if (hbar_power == 1) factors.push_back("hbar");
    else if (hbar_power > 1) factors.push_back("hbar^" + std::to_string(hbar_power));
    factors.push_back(m.is_unit() ? "I" : monomial_to_string(m));
    std::string piece;
    for (size_t k = 0; k < factors.size(); ++k) {
      if (k) piece += "*";
      piece += factors[k];
    }
    out += piece;
  };
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const Monomial& m = it->first;
    const HScalar& c = it->second;
    for (unsigned k = 0; k <= static_cast<unsigned>(c.hbar_degree()); ++k) {
      Gaussian g = c.coeff(k);
      emit(g.re, false, k, m);
      emit(g.im, true, k, m);
    }
  }
  return out;
}

}  // namespace weylq
