#pragma once
// First-order deformations of isolated complete intersection germs.
//
// A germ is presented by d polynomials in e variables vanishing at the
// origin, with no linear parts (a minimal embedding). T^1 is O^d / J where J
// is generated by the Jacobian columns; over the polynomial ring this is
// P^d / J~ with J~ = J + (f_k e_j).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmooth/gb.hpp"
#include "qsmooth/linalg.hpp"

namespace qsmooth::t1 {

using gb::GbOptions;
using gb::GroebnerBasis;
using gb::QuotientBasis;
using gb::VectorPolynomial;
using poly::Polynomial;
using poly::Rational;

class GermPresentation {
 public:
  // Throws std::invalid_argument unless every equation lies in m^2 and all
  // share the variable count (names, when given, must match it).
  GermPresentation(std::size_t e, std::vector<Polynomial> f, std::vector<std::string> names = {});

  std::size_t e() const { return e_; }
  std::size_t d() const { return f_.size(); }
  // Germ dimension e - d.
  long n() const { return static_cast<long>(e_) - static_cast<long>(f_.size()); }
  const std::vector<Polynomial>& f() const { return f_; }
  const std::vector<std::string>& names() const { return names_; }
  bool smooth() const { return f_.empty(); }

  // Set by minimalize when a variable had to be solved for as a truncated
  // power series; equations are then exact only up to this degree.
  std::optional<unsigned> truncated_at;
  // Indices (in the input ring) of the variables that survived.
  std::vector<std::size_t> kept;

  std::string to_string() const;

 private:
  std::size_t e_;
  std::vector<Polynomial> f_;
  std::vector<std::string> names_;
};

// An equation with a nonzero constant term: the origin is not on the germ.
class InconsistentSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MinimalizeOptions {
  // Truncation degree for implicit solutions (only used when a variable
  // with a linear coefficient also occurs non-linearly).
  unsigned series_degree = 24;
};

// Eliminates variables via equations with nonzero linear part until every
// equation lies in m^2; equations that become zero are dropped. Throws
// InconsistentSystem if some equation does not vanish at the origin and
// std::invalid_argument on arity mismatch.
GermPresentation minimalize(const std::vector<Polynomial>& f, std::vector<std::string> names = {},
                            const MinimalizeOptions& options = {});

struct T1Presentation {
  GermPresentation germ;
  // Basis of J~ + m^N P^d with N = truncation_degree; absent for a smooth
  // germ (d = 0) and for a non-isolated singularity.
  std::optional<GroebnerBasis> gb;
  // Standard basis of T^1 (empty dimension when not isolated).
  QuotientBasis quotient;
  // Length of T^1 at the origin; empty when the singularity is not isolated
  // (no stabilisation up to the truncation bound).
  std::optional<std::size_t> local_length;
  // Least N with m^N T^1 = 0.
  std::optional<unsigned> truncation_degree;

  std::optional<std::size_t> tjurina() const { return local_length; }
  std::size_t rank() const { return germ.d(); }
};

// Generators of J~: Jacobian columns first, then f_k e_j (k outer).
std::vector<VectorPolynomial> jtilde_generators(const GermPresentation& germ);

struct T1Options {
  // Largest N tried for dim P^d / (J~ + m^N), and the cap on terms of degree
  // < N; past either the singularity is reported as not isolated.
  unsigned max_truncation = 40;
  std::size_t max_columns = 200'000;
};

T1Presentation t1_module(const GermPresentation& germ, const T1Options& options = {});

class T1Class {
 public:
  T1Class(const T1Presentation& t1, VectorPolynomial representative);

  const VectorPolynomial& representative() const { return rep_; }
  const VectorPolynomial& canonical() const { return canonical_; }
  std::size_t rank() const { return rep_.rank(); }

  friend T1Class operator+(const T1Class& a, const T1Class& b);
  friend bool operator==(const T1Class& a, const T1Class& b) { return a.canonical_ == b.canonical_; }

 private:
  VectorPolynomial rep_;
  VectorPolynomial canonical_;
  std::optional<GroebnerBasis> basis_;
};

// Class of the standard unit vector e_i.
T1Class unit_class(const T1Presentation& t1, std::size_t i);

// Constant terms of the representative.
linalg::Vector const_part(const T1Class& c);

// Nonzero constant part. Throws std::domain_error on a smooth germ.
bool is_good_direction(const T1Class& c);

class NotProper : public std::domain_error {
 public:
  NotProper() : std::domain_error("submodule is not proper (M = T1 by Nakayama)") {}
};

class ProperSubmodule {
 public:
  ProperSubmodule(std::size_t rank, std::vector<T1Class> generators);
  const std::vector<T1Class>& generators() const { return generators_; }
  // Row-reduced basis of the span of the generators' constant parts.
  const linalg::RowSpace& constant_span() const { return span_; }

 private:
  std::vector<T1Class> generators_;
  linalg::RowSpace span_;
};

// e_i for the least i outside the constant-part span. Throws NotProper when
// the span is everything, std::domain_error for a smooth germ.
T1Class good_direction_for_submodule(const T1Presentation& t1, const ProperSubmodule& m);

struct BertiniCheck {
  std::size_t jacobian_rank = 0;  // of (F_k) w.r.t. (x, s) at the origin
  std::size_t total_space_embedding_dimension = 0;
  bool passed = false;
};

// Builds F_k = f_k + s c_k in e + 1 variables and checks that the total
// space has embedding dimension at most e at the origin (Jacobian rank >= 1).
BertiniCheck bertini_details(const GermPresentation& germ, const T1Class& c);
bool verify_good_direction_bertini(const GermPresentation& germ, const T1Class& c);

struct FiberDrop {
  // Whether (F_k, dF_k/dx_i)|_{s = s0} generates the unit ideal: then every
  // singular point of the fiber has embedding dimension < e.
  bool passed = false;
  std::size_t basis_size = 0;
};

// Global over the affine chart, so a fiber may fail on points far from the
// origin; monotone_degeneration is the local statement.
FiberDrop fiber_embedding_drop(const GermPresentation& germ, const T1Class& c, const Rational& s0,
                               const GbOptions& options = {});

struct DegenerationCheck {
  // No point of embedding dimension e on a fiber s != 0 tends to the origin
  // as s -> 0: the origin is off V((F_k, dF_k/dx_i) : s^inf) in (x, s)-space.
  bool passed = false;
  // The saturated ideal is (1): no such point on any fiber s != 0 at all.
  bool globally_clean = false;
};

DegenerationCheck monotone_degeneration(const GermPresentation& germ, const T1Class& c,
                                        const GbOptions& options = {});

}  // namespace qsmooth::t1
