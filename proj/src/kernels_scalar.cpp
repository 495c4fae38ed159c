#include "cogedit/kernels.hpp"

#include <bit>

namespace cogedit::kernels {

namespace {

PairSums pair_sums_scalar(const double* w, std::uint32_t adj, std::uint32_t sel,
                          std::size_t /*chunks*/) {
  // Four lanes per side, combined as (l0+l2)+(l1+l3). Skipped zero bits
  // contribute exact +0.0 and are unobservable (weights are >= +0.0).
  double e[4] = {0.0, 0.0, 0.0, 0.0};
  double ne[4] = {0.0, 0.0, 0.0, 0.0};
  std::uint32_t es = sel & adj;
  std::uint32_t ns = sel & ~adj;
  while (es) {
    int i = std::countr_zero(es);
    es &= es - 1;
    e[i & 3] += w[i];
  }
  while (ns) {
    int i = std::countr_zero(ns);
    ns &= ns - 1;
    ne[i & 3] += w[i];
  }
  return {(e[0] + e[2]) + (e[1] + e[3]), (ne[0] + ne[2]) + (ne[1] + ne[3])};
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t words) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

std::uint64_t xor_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t words) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += std::popcount(a[i] ^ b[i]);
  return c;
}

std::uint64_t andnot_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                     std::size_t words) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += std::popcount(a[i] & ~b[i]);
  return c;
}

} // namespace

extern const Ops kScalarOps;
const Ops kScalarOps = {
    pair_sums_scalar,
    and_popcount_scalar,
    xor_popcount_scalar,
    andnot_popcount_scalar,
};

} // namespace cogedit::kernels
