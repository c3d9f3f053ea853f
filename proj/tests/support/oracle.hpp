#pragma once
// Dense linear-algebra oracles for quotient dimensions. They share no code
// with the Groebner engine: everything is a rank computation over Q on
// explicitly enumerated monomial multiples.

#include <cstddef>
#include <map>
#include <vector>

#include "qsmooth/polynomial.hpp"

namespace qsmooth::testing {

using poly::Polynomial;
// A generator of a submodule of Q[x]^d: d polynomials.
using Generator = std::vector<Polynomial>;

// dim P^d_{<=N} / span{ m * g : deg(m) + deg(g) <= N }.
// Equals the quotient dimension of a zero-dimensional ideal once N is past
// the Macaulay bound of a system without solutions at infinity.
std::size_t macaulay_deficiency(const std::vector<Generator>& gens, std::size_t nvars,
                                unsigned degree_bound);

// dim P^d / (M + m^N P^d), with m the maximal ideal at the origin.
std::size_t local_colength(const std::vector<Generator>& gens, std::size_t nvars, unsigned n);

struct LocalColength {
  std::size_t dimension = 0;
  unsigned degree = 0;  // the N at which the value stabilised
  bool stable = false;
};

// Raises N until local_colength(N) == local_colength(N + 1); by Nakayama the
// common value is then the length of the localisation at the origin.
LocalColength local_colength_stable(const std::vector<Generator>& gens, std::size_t nvars,
                                    unsigned start, unsigned max_degree);

// local_colength split by character under x_i -> xi^{w_i} x_i (xi of order r),
// with the k-th component shifted by shifts[k]. The submodule must be graded
// by character, which holds when every generator is semi-invariant.
std::map<long, std::size_t> local_colength_by_character(const std::vector<Generator>& gens, std::size_t nvars,
                                                        unsigned n, long r, const std::vector<long>& weights,
                                                        const std::vector<long>& shifts);

// Terminality of 1/r(a, b, c) by listing every group element and summing
// residues with integer arithmetic (no fractions).
bool terminal_by_enumeration(unsigned r, unsigned a, unsigned b, unsigned c);

}  // namespace qsmooth::testing
