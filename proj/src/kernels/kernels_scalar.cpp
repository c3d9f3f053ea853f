#include "qsmooth/kernels.hpp"

#include <algorithm>

namespace qsmooth::kernels {
namespace {

bool divides(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

bool coprime(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] != 0 && b.e[i] != 0) return false;
  return true;
}

void add(const ExpVec& a, const ExpVec& b, ExpVec& out) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    out.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
}

void sub(const ExpVec& a, const ExpVec& b, ExpVec& out) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    out.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
}

void lcm(const ExpVec& a, const ExpVec& b, ExpVec& out) {
  for (std::size_t i = 0; i < kMaxVars; ++i) out.e[i] = std::max(a.e[i], b.e[i]);
}

std::uint32_t degree(const ExpVec& a) {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) d += a.e[i];
  return d;
}

bool equal(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] != b.e[i]) return false;
  return true;
}

int cmp_grevlex(const ExpVec& a, const ExpVec& b) {
  const auto da = degree(a), db = degree(b);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

int cmp_lex(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  }
  return 0;
}

std::ptrdiff_t find_divisor(const ExpVec* candidates, std::size_t n, const ExpVec& target) {
  for (std::size_t k = 0; k < n; ++k)
    if (divides(candidates[k], target)) return static_cast<std::ptrdiff_t>(k);
  return -1;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", divides,     coprime, add,     sub,
                                 lcm,      degree,      equal,   cmp_grevlex,
                                 cmp_lex,  find_divisor};
  return table;
}

}  // namespace qsmooth::kernels
