#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qsmooth/monomial.hpp"

namespace qsmooth::poly {

// A monomial order: graded reverse lex, lex, or an elimination order whose
// first `block` variables form a graded-reverse-lex block dominating the
// remaining variables (also graded reverse lex). An optional permutation
// lists variable indices from most to least significant.
class MonomialOrder {
 public:
  enum class Kind { GradedReverseLex, Lex, BlockElimination };

  MonomialOrder() = default;

  static MonomialOrder grevlex() { return MonomialOrder(Kind::GradedReverseLex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder elimination(std::size_t block) {
    return MonomialOrder(Kind::BlockElimination, block);
  }

  // Throws std::invalid_argument unless `order` is a permutation of 0..n-1.
  MonomialOrder with_permutation(std::vector<std::size_t> order) const;

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }
  const std::vector<std::size_t>& permutation() const { return perm_; }

  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  // Canonical spelling: "grevlex", "lex", "elim(k)", optionally followed by
  // "[i,j,...]" for a permutation. parse() accepts exactly these forms.
  std::string to_string() const;
  static MonomialOrder parse(std::string_view text);

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}
  int compare_identity(const kernels::ExpVec& a, const kernels::ExpVec& b) const;

  Kind kind_ = Kind::GradedReverseLex;
  std::size_t block_ = 0;
  std::vector<std::size_t> perm_;
};

}  // namespace qsmooth::poly
