#include "qsmooth/monomial.hpp"

#include <stdexcept>

namespace qsmooth::poly {

Monomial::Monomial(std::span<const unsigned> exponents) {
  if (exponents.size() > kMaxVars)
    throw std::invalid_argument("monomial has more than " + std::to_string(kMaxVars) +
                                " variables");
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

Monomial Monomial::variable(std::size_t index, unsigned power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned exponent) {
  if (i >= kMaxVars) throw std::out_of_range("variable index out of range");
  if (exponent > kMaxExponent) throw std::overflow_error("exponent too large");
  v_.e[i] = static_cast<std::uint16_t>(exponent);
}

std::size_t Monomial::support_end() const {
  for (std::size_t i = kMaxVars; i-- > 0;)
    if (v_.e[i] != 0) return i + 1;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  kernels::active().add(v_, other.v_, r.v_);
  // A wrapped lane is smaller than the operand it came from.
  if (!kernels::active().divides(v_, r.v_) || !kernels::active().divides(other.v_, r.v_))
    throw std::overflow_error("monomial exponent overflow");
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  kernels::active().sub(other.v_, v_, r.v_);
  return r;
}

std::vector<unsigned> Monomial::exponents(std::size_t nvars) const {
  std::vector<unsigned> out(nvars);
  for (std::size_t i = 0; i < nvars; ++i) out[i] = v_.e[i];
  return out;
}

std::size_t Monomial::hash() const {
  // FNV-1a over the exponent lanes.
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    h ^= v_.e[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace qsmooth::poly
