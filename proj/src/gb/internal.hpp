#pragma once
// Fraction-free internal representation used by the Groebner engine.

#include <cstdint>
#include <vector>

#include "qsmooth/gb.hpp"

namespace qsmooth::gb::detail {

using poly::Integer;

struct ITerm {
  Monomial m;
  std::uint32_t comp = 0;
  Integer c;
};

// Terms in strictly descending module order, integer coefficients.
using IVec = std::vector<ITerm>;

struct TermOrder {
  MonomialOrder order;

  int compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    const int c = order.compare(a, b);
    if (c != 0) return c;
    if (ca == cb) return 0;
    return ca < cb ? 1 : -1;
  }
  int compare(const ITerm& a, const ITerm& b) const { return compare(a.m, a.comp, b.m, b.comp); }
};

// Leading-term index over a list of reducers, bucketed by component so the
// divisor search is a single kernel call over contiguous exponent vectors.
class ReducerSet {
 public:
  explicit ReducerSet(std::size_t rank) : leads_(rank), polys_(rank) {}
  void add(const IVec* p);
  const IVec* find(const ITerm& t) const;
  void clear();

 private:
  std::vector<std::vector<kernels::ExpVec>> leads_;
  std::vector<std::vector<const IVec*>> polys_;
};

// Converts to primitive integer form; returns s with result = s * v.
IVec to_integer(const VectorPolynomial& v, const TermOrder& ord, Rational* scale = nullptr);
VectorPolynomial to_rational(const IVec& p, std::size_t rank, std::size_t nvars,
                             const Rational& divisor = 1);

// Divides by the content and makes the leading coefficient positive.
// Returns the divisor applied (signed).
Integer make_primitive(IVec& p);

// Reduces p against `reducers`. With full = false only the leading term is
// reduced repeatedly. On return, p_out = scale * (p_in - element of module),
// and `scale` (if given) is multiplied accordingly.
void reduce(IVec& p, const ReducerSet& reducers, const TermOrder& ord, bool full,
            Rational* scale = nullptr);

// Fraction-free S-vector of f and g (same leading component).
IVec s_vector(const IVec& f, const IVec& g, const TermOrder& ord);

// Wraps elements already known to form a reduced basis (monic, pairwise
// reduced); no completion is run.
GroebnerBasis adopt_reduced(std::size_t nvars, std::size_t rank, const MonomialOrder& order,
                            std::vector<VectorPolynomial> monic);

}  // namespace qsmooth::gb::detail
