#pragma once
// Groebner bases of ideals in Q[x_0..x_{n-1}] and of submodules of free
// modules Q[x]^d.
//
// Module terms x^a e_k are ordered term-over-position: first by the monomial
// order on x^a, then e_0 > e_1 > ... . Pairs are processed by the normal
// strategy (smallest lcm degree, then lexicographic on the index pair) with
// the Gebauer-Moeller criteria, so results are reproducible bit for bit.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmooth/linalg.hpp"
#include "qsmooth/order.hpp"
#include "qsmooth/polynomial.hpp"

namespace qsmooth::gb {

using poly::Monomial;
using poly::MonomialOrder;
using poly::Polynomial;
using poly::Rational;

// An element of Q[x]^d.
class VectorPolynomial {
 public:
  VectorPolynomial() = default;
  // All components must share one variable count; at least one component.
  explicit VectorPolynomial(std::vector<Polynomial> components);
  VectorPolynomial(std::initializer_list<Polynomial> components)
      : VectorPolynomial(std::vector<Polynomial>(components)) {}

  static VectorPolynomial zero(std::size_t rank, std::size_t nvars);
  static VectorPolynomial unit(std::size_t rank, std::size_t nvars, std::size_t k);

  std::size_t rank() const { return components_.size(); }
  std::size_t nvars() const { return components_.empty() ? 0 : components_[0].nvars(); }
  const Polynomial& operator[](std::size_t k) const { return components_[k]; }
  const std::vector<Polynomial>& components() const { return components_; }
  bool is_zero() const;

  VectorPolynomial& operator+=(const VectorPolynomial& other);
  VectorPolynomial& operator-=(const VectorPolynomial& other);
  friend VectorPolynomial operator+(VectorPolynomial a, const VectorPolynomial& b) { return a += b; }
  friend VectorPolynomial operator-(VectorPolynomial a, const VectorPolynomial& b) { return a -= b; }
  friend VectorPolynomial operator*(const Polynomial& f, const VectorPolynomial& v);
  friend bool operator==(const VectorPolynomial&, const VectorPolynomial&) = default;

  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

 private:
  void check_compatible(const VectorPolynomial& other) const;
  std::vector<Polynomial> components_;
};

struct ModuleTerm {
  Monomial monomial;
  std::size_t component = 0;
  friend bool operator==(const ModuleTerm&, const ModuleTerm&) = default;
};

// Key/value persistence for reduced bases (see cache.hpp).
class BasisStore {
 public:
  virtual ~BasisStore() = default;
  virtual std::optional<std::string> load(const std::string& key) = 0;
  virtual void save(const std::string& key, const std::string& value) = 0;
};

class DegreeLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GbOptions {
  // Abort when a new basis element exceeds this total degree.
  std::optional<unsigned> max_degree;
  BasisStore* store = nullptr;
};

struct GbImpl;

// Reduced Groebner basis. Immutable; copies share state.
class GroebnerBasis {
 public:
  std::size_t nvars() const;
  std::size_t rank() const;
  const MonomialOrder& order() const;

  // Monic generators sorted by ascending leading term.
  const std::vector<VectorPolynomial>& generators() const;
  // Rank-1 convenience: first components of generators().
  std::vector<Polynomial> polynomials() const;
  std::vector<ModuleTerm> leading_terms() const;
  std::size_t size() const { return generators().size(); }
  unsigned max_degree() const;

  // Three-way comparison of module terms in this basis' order.
  int compare(const ModuleTerm& a, const ModuleTerm& b) const;

  // Throws std::invalid_argument on rank or variable-count mismatch.
  VectorPolynomial normal_form(const VectorPolynomial& v) const;
  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const VectorPolynomial& v) const { return normal_form(v).is_zero(); }
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  // True when the basis generates the whole free module (1 for ideals).
  bool is_unit() const;

  // Canonical text form, used by the basis cache.
  std::string serialize() const;
  static GroebnerBasis deserialize(const std::string& text);

 private:
  friend GroebnerBasis make_basis(std::shared_ptr<const GbImpl>);
  friend bool satisfies_buchberger_criterion(const GroebnerBasis& basis);
  explicit GroebnerBasis(std::shared_ptr<const GbImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const GbImpl> impl_;
};

// Reduced Groebner basis of the submodule generated by `generators`.
// Throws std::invalid_argument if the list is empty or ranks differ.
GroebnerBasis buchberger(std::span<const VectorPolynomial> generators, const MonomialOrder& order,
                         const GbOptions& options = {});
GroebnerBasis buchberger(std::span<const Polynomial> generators, const MonomialOrder& order,
                         const GbOptions& options = {});

// Reduced basis of M + m^N Q[x]^d, m the maximal ideal at the origin, by
// Gauss-Jordan elimination on the finite space of terms of degree < N. Needs
// a degree-compatible order. Entries stay bounded by minors, which pair
// completion does not guarantee on dense local problems. Throws
// std::length_error when that space has more than `max_columns` terms.
GroebnerBasis truncated_basis(std::span<const VectorPolynomial> generators, unsigned N,
                              const MonomialOrder& order, std::size_t max_columns = 200'000);

// Canonical text of a generator list and order; the basis cache keys on it.
std::string cache_key(std::span<const VectorPolynomial> generators, const MonomialOrder& order);

// Checks that every S-vector of same-component pairs reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& basis);

struct QuotientBasis {
  // Empty when the quotient is infinite dimensional.
  std::optional<std::size_t> dimension;
  // Standard terms in ascending order (empty when infinite).
  std::vector<ModuleTerm> basis;
  bool finite() const { return dimension.has_value(); }
};

// Enumerates the standard terms of Q[x]^d / M. Throws std::length_error if a
// finite quotient has more than `limit` standard terms.
QuotientBasis quotient_dimension(const GroebnerBasis& basis, std::size_t limit = 1'000'000);

// (I : g^infinity), computed as the elimination of a tag variable t from
// I + (1 - t g). Throws std::invalid_argument if g = 0 or the basis is not
// an ideal basis.
GroebnerBasis ideal_quotient_saturation(const GroebnerBasis& ideal, const Polynomial& g,
                                        const GbOptions& options = {});

// Whether f vanishes on V(I), i.e. 1 lies in I + (1 - t f).
bool radical_membership(const Polynomial& f, const GroebnerBasis& ideal,
                        const GbOptions& options = {});

// Generators of I intersected with Q[x_k..x_{n-1}], from a basis under
// elim(k). The returned polynomials stay in the n-variable ring.
std::vector<Polynomial> eliminate(std::span<const Polynomial> generators, std::size_t k,
                                  const GbOptions& options = {});

// Number of distinct complex points of a zero-dimensional ideal. Throws
// std::domain_error when the quotient is infinite.
std::size_t count_points(const GroebnerBasis& ideal, const GbOptions& options = {});

// Monic generator of I intersected with Q[x_v] for a zero-dimensional I: the
// minimal polynomial of x_v on the quotient. Throws std::domain_error when
// the quotient is infinite.
linalg::uni::Poly univariate_eliminant(const GroebnerBasis& ideal, std::size_t v);

struct RationalPoints {
  std::vector<std::vector<Rational>> points;  // lexicographic by coordinate
  // The points listed are all complex points of the ideal.
  bool complete = false;
};

// Rational points of a zero-dimensional ideal by fixing one coordinate at a
// time to a rational root of its minimal polynomial.
RationalPoints rational_points(const GroebnerBasis& ideal, const GbOptions& options = {});

}  // namespace qsmooth::gb
