// Compiled with -mavx2 (file-level flag); everything is guarded so the TU is
// empty on targets where that flag is unavailable.
#include "cogedit/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <bit>

namespace cogedit::kernels {

namespace {

// 16-entry nibble -> 4-lane double mask table.
alignas(32) constexpr std::uint64_t kLaneMask[16][4] = {
    {0, 0, 0, 0},
    {~0ull, 0, 0, 0},
    {0, ~0ull, 0, 0},
    {~0ull, ~0ull, 0, 0},
    {0, 0, ~0ull, 0},
    {~0ull, 0, ~0ull, 0},
    {0, ~0ull, ~0ull, 0},
    {~0ull, ~0ull, ~0ull, 0},
    {0, 0, 0, ~0ull},
    {~0ull, 0, 0, ~0ull},
    {0, ~0ull, 0, ~0ull},
    {~0ull, ~0ull, 0, ~0ull},
    {0, 0, ~0ull, ~0ull},
    {~0ull, 0, ~0ull, ~0ull},
    {0, ~0ull, ~0ull, ~0ull},
    {~0ull, ~0ull, ~0ull, ~0ull},
};

inline __m256d lane_mask(unsigned nibble) {
  return _mm256_load_pd(reinterpret_cast<const double*>(kLaneMask[nibble]));
}

// (l0+l2)+(l1+l3), matching the scalar combine.
inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

PairSums pair_sums_avx2(const double* w, std::uint32_t adj, std::uint32_t sel,
                        std::size_t chunks) {
  __m256d eacc = _mm256_setzero_pd();
  __m256d nacc = _mm256_setzero_pd();
  std::uint32_t es = sel & adj;
  std::uint32_t ns = sel & ~adj;
  std::uint32_t rest = sel;
  for (std::size_t c = 0; c < chunks && rest; ++c) {
    unsigned s4 = rest & 0xFu;
    unsigned e4 = es & 0xFu;
    unsigned n4 = ns & 0xFu;
    rest >>= 4;
    es >>= 4;
    ns >>= 4;
    if (!s4) continue;
    __m256d wv = _mm256_loadu_pd(w + 4 * c);
    eacc = _mm256_add_pd(eacc, _mm256_and_pd(wv, lane_mask(e4)));
    nacc = _mm256_add_pd(nacc, _mm256_and_pd(wv, lane_mask(n4)));
  }
  return {hsum(eacc), hsum(nacc)};
}

// vpshufb nibble-count popcount over 256-bit blocks, scalar tail.
inline std::uint64_t popcount_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

template <typename Combine, typename CombineScalar>
std::uint64_t popcount_kernel(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t words, Combine comb, CombineScalar combs) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0F);
  __m256i acc = _mm256_setzero_si256();
  std::size_t blocks = words / 4;
  for (std::size_t i = 0; i < blocks; ++i) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + 4 * i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + 4 * i));
    __m256i v = comb(va, vb);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                  _mm256_shuffle_epi8(lut, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  std::uint64_t total = popcount_sum(acc);
  for (std::size_t i = blocks * 4; i < words; ++i)
    total += std::popcount(combs(a[i], b[i]));
  return total;
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) {
  return popcount_kernel(
      a, b, words, [](__m256i x, __m256i y) { return _mm256_and_si256(x, y); },
      [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

std::uint64_t xor_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) {
  return popcount_kernel(
      a, b, words, [](__m256i x, __m256i y) { return _mm256_xor_si256(x, y); },
      [](std::uint64_t x, std::uint64_t y) { return x ^ y; });
}

std::uint64_t andnot_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                   std::size_t words) {
  // _mm256_andnot_si256 computes ~x & y, so swap arguments.
  return popcount_kernel(
      a, b, words, [](__m256i x, __m256i y) { return _mm256_andnot_si256(y, x); },
      [](std::uint64_t x, std::uint64_t y) { return x & ~y; });
}

} // namespace

extern const Ops kAvx2Ops;
const Ops kAvx2Ops = {
    pair_sums_avx2,
    and_popcount_avx2,
    xor_popcount_avx2,
    andnot_popcount_avx2,
};

} // namespace cogedit::kernels

#endif // __AVX2__
