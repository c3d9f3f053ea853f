#include <cctype>

#include "qsmooth/polynomial.hpp"

namespace qsmooth::poly {
namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> vars) : text_(text), vars_(vars) {}

  Polynomial run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(vars_.size());
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    if (accept('-')) return -factor();
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t at = pos_;
      if (pos_ < text_.size() && text_[pos_] == '-') throw ParseError("negative exponent", at);
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected exponent", at);
      const Integer e = digits();
      if (e > kMaxExponent) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(digits());
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        const std::size_t at = ++pos_;
        skip_space();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw ParseError("expected denominator", at);
        const Integer den = digits();
        if (den == 0) throw ParseError("zero denominator", at);
        value /= Rational(den);
      }
      return Polynomial::constant(vars_.size(), value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
      throw ParseError("undeclared variable '" + std::string(name) + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text, std::span<const std::string> variables) {
  return Parser(text, variables).run();
}

}  // namespace qsmooth::poly
