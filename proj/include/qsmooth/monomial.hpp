#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qsmooth/kernels.hpp"

namespace qsmooth::poly {

inline constexpr std::size_t kMaxVars = kernels::kMaxVars;
inline constexpr unsigned kMaxExponent = 0xFFFF;

// A monomial x^a with at most kMaxVars variables. The variable count lives in
// the owning polynomial; unused lanes are zero.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const unsigned> exponents);
  Monomial(std::initializer_list<unsigned> exponents)
      : Monomial(std::span<const unsigned>(exponents.begin(), exponents.size())) {}
  explicit Monomial(const kernels::ExpVec& raw) : v_(raw) {}

  static Monomial variable(std::size_t index, unsigned power = 1);

  unsigned operator[](std::size_t i) const { return v_.e[i]; }
  void set(std::size_t i, unsigned exponent);

  std::uint32_t degree() const { return kernels::active().degree(v_); }
  // Largest index with a nonzero exponent plus one.
  std::size_t support_end() const;
  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& other) const { return kernels::active().divides(v_, other.v_); }
  bool coprime(const Monomial& other) const { return kernels::active().coprime(v_, other.v_); }

  // Throws std::overflow_error if an exponent would exceed kMaxExponent.
  Monomial operator*(const Monomial& other) const;
  // Exact quotient; requires other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    kernels::active().lcm(a.v_, b.v_, r.v_);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return kernels::active().equal(a.v_, b.v_);
  }

  const kernels::ExpVec& raw() const { return v_; }
  std::vector<unsigned> exponents(std::size_t nvars) const;
  std::size_t hash() const;

 private:
  kernels::ExpVec v_;
};

// Degree-reverse-lexicographic three-way comparison (1 if a > b).
inline int grevlex_compare(const Monomial& a, const Monomial& b) {
  return kernels::active().cmp_grevlex(a.raw(), b.raw());
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace qsmooth::poly
