#pragma once
// Exponent-vector kernels.
//
// Every monomial in the library is a fixed block of 16 unsigned 16-bit
// exponents (one AVX2 register). Lanes beyond a ring's variable count are
// kept at zero, so kernels never need the variable count.
//
// Two implementations exist: a portable scalar reference and an AVX2 one.
// The active table is chosen once at first use from CPUID; the
// QSMOOTH_KERNELS environment variable ("scalar" or "avx2") overrides it.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qsmooth::kernels {

inline constexpr std::size_t kMaxVars = 16;

struct alignas(32) ExpVec {
  std::uint16_t e[kMaxVars] = {};
};

struct KernelTable {
  const char* name;
  // a | b, i.e. a_i <= b_i for every lane.
  bool (*divides)(const ExpVec& a, const ExpVec& b);
  // min(a_i, b_i) == 0 for every lane.
  bool (*coprime)(const ExpVec& a, const ExpVec& b);
  void (*add)(const ExpVec& a, const ExpVec& b, ExpVec& out);
  // out = b - a; only meaningful when a | b.
  void (*sub)(const ExpVec& a, const ExpVec& b, ExpVec& out);
  void (*lcm)(const ExpVec& a, const ExpVec& b, ExpVec& out);
  std::uint32_t (*degree)(const ExpVec& a);
  bool (*equal)(const ExpVec& a, const ExpVec& b);
  // Three-way comparisons returning -1, 0 or 1 (1 means a is larger).
  int (*cmp_grevlex)(const ExpVec& a, const ExpVec& b);
  int (*cmp_lex)(const ExpVec& a, const ExpVec& b);
  // Index of the first candidate dividing `target`, or -1.
  std::ptrdiff_t (*find_divisor)(const ExpVec* candidates, std::size_t n,
                                 const ExpVec& target);
};

const KernelTable& scalar_table();
// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable& active();

// Replaces the active table (tests and benchmarks). Returns false if the
// requested table is unavailable.
bool select(std::string_view name);

}  // namespace qsmooth::kernels
