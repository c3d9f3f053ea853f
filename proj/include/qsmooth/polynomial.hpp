#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsmooth/monomial.hpp"

namespace qsmooth::poly {

using Rational = mpq_class;
using Integer = mpz_class;

struct Term {
  Monomial monomial;
  Rational coefficient;

  friend bool operator==(const Term& a, const Term& b) {
    return a.monomial == b.monomial && a.coefficient == b.coefficient;
  }
};

// Sparse polynomial over Q in a fixed number of variables. Terms are kept in
// strictly descending graded-reverse-lex order with no zero coefficients, so
// structural equality is polynomial equality.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0);

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(std::size_t nvars, const Monomial& m, const Rational& c = 1);
  // Accepts terms in any order, combines duplicates and drops zeros.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // -1 for the zero polynomial.
  long total_degree() const;

  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  // Coefficient of x_i in the linear part.
  Rational linear_coefficient(std::size_t i) const;
  // Degree of x_i in the polynomial (max exponent over terms).
  unsigned degree_in(std::size_t i) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  Polynomial mul_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned exponent) const;

  Rational evaluate(std::span<const Rational> point) const;
  // Re-embeds into `new_nvars` variables, variable i becoming variable
  // i + offset.
  Polynomial extend(std::size_t new_nvars, std::size_t offset = 0) const;
  // Sum of the terms of total degree <= max_degree.
  Polynomial truncate(unsigned max_degree) const;
  // Terms containing no variable with index in [begin, end).
  Polynomial drop_terms_with(std::size_t begin, std::size_t end) const;

  std::string to_string(std::span<const std::string> names) const;
  // Uses x0, x1, ... as variable names.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const Polynomial& other) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& f);

// Formal partial derivative with respect to variable `index`.
// Throws std::out_of_range for a bad index.
Polynomial partial_derivative(const Polynomial& f, std::size_t index);

// Ring homomorphism x_i -> assignment[i]; every image must live in
// `result_nvars` variables. Throws std::invalid_argument on arity mismatch.
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> assignment,
                      std::size_t result_nvars);

struct QuasiHomogeneity {
  bool homogeneous = false;
  // Weighted degree; empty for the zero polynomial.
  std::optional<long> degree;
};

QuasiHomogeneity is_quasi_homogeneous(const Polynomial& f, std::span<const long> weights);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ['-'] atom ['^' digits]
//   atom   := digits ['/' digits] | identifier | '(' expr ')'
Polynomial parse(std::string_view text, std::span<const std::string> variables);

// Default variable names x0, x1, ... .
std::vector<std::string> default_names(std::size_t nvars);

}  // namespace qsmooth::poly
