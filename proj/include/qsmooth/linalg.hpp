#pragma once
// Small dense exact linear algebra and univariate helpers over Q.

#include <cstddef>
#include <optional>
#include <vector>

#include "qsmooth/polynomial.hpp"

namespace qsmooth::linalg {

using poly::Rational;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row major

// Incrementally maintained reduced row echelon basis of a row space.
class RowSpace {
 public:
  explicit RowSpace(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }

  // Returns true if `v` enlarged the space.
  bool insert(Vector v);
  bool contains(const Vector& v) const;
  // Reduces v against the basis; zero iff v is in the span.
  Vector reduce(Vector v) const;

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;        // each normalised with pivot 1
  std::vector<std::size_t> pivots_;  // pivot column per row
};

std::size_t rank(const Matrix& m);

// Basis of {x : m x = 0}, with `cols` unknowns.
Matrix nullspace(const Matrix& m, std::size_t cols);

// Dense univariate polynomials, coefficient of t^k at index k, no trailing
// zeros (the zero polynomial is empty).
namespace uni {
using Poly = std::vector<Rational>;
void trim(Poly& p);
Poly derivative(const Poly& p);
// Remainder and quotient of division; throws on zero divisor.
void divide(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder);
Poly gcd(Poly a, Poly b);  // monic, or empty if both are zero
Poly squarefree_part(const Poly& p);
std::size_t degree(const Poly& p);  // degree of the zero polynomial is 0
Rational evaluate(const Poly& p, const Rational& t);
// Distinct rational roots, ascending. Empty optional when the leading or
// constant coefficient cannot be factored within `max_trials` divisions.
// Throws on the zero polynomial.
std::optional<std::vector<Rational>> rational_roots(const Poly& p, unsigned long max_trials = 1'000'000);
}  // namespace uni

}  // namespace qsmooth::linalg
