#pragma once
// Diagonal cyclic group actions x_i -> xi^{a_i} x_i and the equivariant
// versions of the good-direction calculus.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsmooth/t1.hpp"

namespace qsmooth::equiv {

using poly::Monomial;
using poly::Polynomial;
using poly::Rational;
using t1::GermPresentation;
using t1::T1Class;
using t1::T1Presentation;

class CyclicAction {
 public:
  // Throws std::invalid_argument unless r >= 1; weights are reduced mod r.
  CyclicAction(long r, std::vector<long> weights);

  long order() const { return r_; }
  const std::vector<long>& weights() const { return weights_; }
  std::size_t nvars() const { return weights_.size(); }

  // sum a_i alpha_i mod r, in [0, r).
  long character(const Monomial& m) const;
  // Same group acting on one more variable with the given weight.
  CyclicAction extended(long weight = 0) const;
  // Restriction to the given variables (e.g. the survivors of minimalize).
  CyclicAction restricted(const std::vector<std::size_t>& variables) const;
  // The subgroup generated by g^m (m divides r), as an action of order r/m.
  CyclicAction subgroup(long m) const;

  std::string to_string() const;

 private:
  long r_;
  std::vector<long> weights_;
};

struct Character {
  long value = 0;
  friend bool operator==(const Character&, const Character&) = default;
};

// The common character of the monomials of f; empty if f is not
// semi-invariant. Throws std::invalid_argument for f = 0 or on arity mismatch.
std::optional<Character> character_of(const Polynomial& f, const CyclicAction& action);

// Every equation has character 0. This judges the given presentation; for a
// hypersurface, a semi-invariant equation of nonzero character cannot be
// fixed by a unit multiplier. Throws std::invalid_argument on arity mismatch.
bool is_ordinary(const GermPresentation& germ, const CyclicAction& action);

// Characters of module terms: x^alpha e_k has character(x^alpha) - chi(f_k),
// so the Jacobian column of x_i has character -a_i. Requires every equation
// to be semi-invariant (std::domain_error otherwise).
std::vector<long> component_shifts(const GermPresentation& germ, const CyclicAction& action);

// Character of a vector polynomial under the shifts above; empty if it is
// not semi-invariant. The zero vector has character 0.
std::optional<Character> character_of(const gb::VectorPolynomial& v, const CyclicAction& action,
                                      const std::vector<long>& shifts);

// Character of a class, read off its canonical form.
std::optional<Character> class_character(const T1Presentation& t1, const T1Class& c, const CyclicAction& action);

// Dimension of each character space of T^1 (characters absent have
// dimension 0). The values sum to the Tjurina number.
std::map<long, std::size_t> t1_character_dimensions(const T1Presentation& t1, const CyclicAction& action);

class NotOrdinary : public std::domain_error {
 public:
  NotOrdinary() : std::domain_error("germ presentation is not ordinary under the action") {}
};

// A good direction for M with character 0. Throws NotOrdinary,
// t1::NotProper, or std::invalid_argument if a generator of M is not
// semi-invariant.
T1Class invariant_good_direction(const T1Presentation& t1, const CyclicAction& action,
                                 const t1::ProperSubmodule& m);

struct FiberSample {
  enum class Status {
    Smooth,                 // no singular point anywhere in the chart
    NoFixedSingularPoints,  // singular points exist, none with a stabiliser
    Ordinary,               // every fixed singular point was checked
    NotOrdinary,
    Unresolved,  // irrational or non-isolated fixed singular points
  };
  Rational s0;
  Status status = Status::Unresolved;
  // Fixed singular points per subgroup order (r/m for the subgroup g^m).
  std::map<long, std::size_t> fixed_singular_points;
  std::string detail;
};

struct FamilyVerdict {
  bool germ_ordinary = false;
  // Whether each f_k + h_k has character 0 under the action extended by s.
  std::vector<bool> equation_invariant;
  std::vector<FiberSample> samples;

  bool invariant() const;
  bool ordinary_preserved() const;
};

// h holds d polynomials in e + 1 variables, s last, each divisible by s.
// Throws std::invalid_argument on arity mismatch or when some h_k is not
// divisible by s.
FamilyVerdict equivariant_family_check(const GermPresentation& germ, const CyclicAction& action,
                                       const std::vector<Polynomial>& h,
                                       const std::vector<Rational>& samples = {1, -1, 2},
                                       const gb::GbOptions& options = {});

std::string to_string(FiberSample::Status s);

}  // namespace qsmooth::equiv
