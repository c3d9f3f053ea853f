// Compiled with -mavx2; only reached after a CPUID check.
#include "qsmooth/kernels.hpp"

#if defined(QSMOOTH_HAVE_AVX2)
#include <immintrin.h>

namespace qsmooth::kernels {
namespace {

inline __m256i load(const ExpVec& a) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.e));
}

inline void store(ExpVec& out, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.e), v);
}

inline bool all_set(__m256i mask) { return _mm256_movemask_epi8(mask) == -1; }

inline bool divides_v(__m256i a, __m256i b) {
  return all_set(_mm256_cmpeq_epi16(_mm256_max_epu16(a, b), b));
}

bool divides(const ExpVec& a, const ExpVec& b) { return divides_v(load(a), load(b)); }

bool coprime(const ExpVec& a, const ExpVec& b) {
  const __m256i m = _mm256_min_epu16(load(a), load(b));
  return all_set(_mm256_cmpeq_epi16(m, _mm256_setzero_si256()));
}

void add(const ExpVec& a, const ExpVec& b, ExpVec& out) {
  store(out, _mm256_add_epi16(load(a), load(b)));
}

void sub(const ExpVec& a, const ExpVec& b, ExpVec& out) {
  store(out, _mm256_sub_epi16(load(b), load(a)));
}

void lcm(const ExpVec& a, const ExpVec& b, ExpVec& out) {
  store(out, _mm256_max_epu16(load(a), load(b)));
}

inline std::uint32_t degree_v(__m256i v) {
  // Widen to 32 bits: exponents are unsigned, so madd_epi16 is not usable.
  const __m256i zero = _mm256_setzero_si256();
  __m256i s = _mm256_add_epi32(_mm256_unpacklo_epi16(v, zero), _mm256_unpackhi_epi16(v, zero));
  __m128i t = _mm_add_epi32(_mm256_castsi256_si128(s), _mm256_extracti128_si256(s, 1));
  t = _mm_add_epi32(t, _mm_shuffle_epi32(t, _MM_SHUFFLE(1, 0, 3, 2)));
  t = _mm_add_epi32(t, _mm_shuffle_epi32(t, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<std::uint32_t>(_mm_cvtsi128_si32(t));
}

std::uint32_t degree(const ExpVec& a) { return degree_v(load(a)); }

bool equal(const ExpVec& a, const ExpVec& b) {
  return all_set(_mm256_cmpeq_epi16(load(a), load(b)));
}

// Bit mask with two bits per lane set where a and b differ.
inline std::uint32_t diff_mask(__m256i a, __m256i b) {
  return ~static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(a, b)));
}

int cmp_grevlex(const ExpVec& a, const ExpVec& b) {
  const __m256i va = load(a), vb = load(b);
  const auto da = degree_v(va), db = degree_v(vb);
  if (da != db) return da > db ? 1 : -1;
  const std::uint32_t m = diff_mask(va, vb);
  if (m == 0) return 0;
  const int lane = (31 - __builtin_clz(m)) / 2;
  return a.e[lane] < b.e[lane] ? 1 : -1;
}

int cmp_lex(const ExpVec& a, const ExpVec& b) {
  const std::uint32_t m = diff_mask(load(a), load(b));
  if (m == 0) return 0;
  const int lane = __builtin_ctz(m) / 2;
  return a.e[lane] > b.e[lane] ? 1 : -1;
}

std::ptrdiff_t find_divisor(const ExpVec* candidates, std::size_t n, const ExpVec& target) {
  const __m256i t = load(target);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256i c0 = load(candidates[k]);
    const __m256i c1 = load(candidates[k + 1]);
    const bool d0 = divides_v(c0, t);
    const bool d1 = divides_v(c1, t);
    if (d0) return static_cast<std::ptrdiff_t>(k);
    if (d1) return static_cast<std::ptrdiff_t>(k + 1);
  }
  if (k < n && divides_v(load(candidates[k]), t)) return static_cast<std::ptrdiff_t>(k);
  return -1;
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{"avx2", divides,     coprime, add,     sub,
                                 lcm,    degree,      equal,   cmp_grevlex,
                                 cmp_lex, find_divisor};
  return &table;
}

}  // namespace qsmooth::kernels

#endif
