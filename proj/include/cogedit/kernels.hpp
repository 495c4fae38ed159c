#pragma once
// Runtime-dispatched arithmetic kernels. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant. The two are bit-identical,
// including floating-point results: summation order is part of the contract.

#include <cstddef>
#include <cstdint>

namespace cogedit::kernels {

enum class Backend { scalar, avx2 };

struct PairSums {
  double edge_weight;     // sum of w[i] over set bits i of (sel & adj)
  double non_edge_weight; // sum of w[i] over set bits i of (sel & ~adj)
};

// Function table for one backend.
struct Ops {
  // Weighted crossing sums of one vertex against a selected vertex set.
  // w points at a weight row padded to 4*chunks doubles; any bit of sel or
  // adj at position >= 4*chunks must be clear. Summation order contract:
  // bit i accumulates into lane i%4 in ascending i, lanes combine as
  // (l0+l2)+(l1+l3). Zero-valued additions may be skipped; all weights are
  // required to be >= +0.0, which makes skipping unobservable.
  PairSums (*pair_sums)(const double* w, std::uint32_t adj, std::uint32_t sel,
                        std::size_t chunks);
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words);
  std::uint64_t (*xor_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words);
  std::uint64_t (*andnot_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                   std::size_t words);
};

// Table for a specific backend; null if the backend is unavailable here.
const Ops* ops_for(Backend b);

// Active table. Picked on first use: AVX2 when the CPU supports it, unless
// the COGEDIT_SIMD environment variable ("scalar" / "avx2") overrides.
const Ops& current_ops();

Backend active_backend();
bool backend_available(Backend b);
// Forces a backend at runtime; returns false (and changes nothing) if it is
// not available on this machine.
bool set_backend(Backend b);

// Convenience forwarders through the active table.
inline PairSums pair_sums(const double* w, std::uint32_t adj, std::uint32_t sel,
                          std::size_t chunks) {
  return current_ops().pair_sums(w, adj, sel, chunks);
}
inline std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t words) {
  return current_ops().and_popcount(a, b, words);
}
inline std::uint64_t xor_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t words) {
  return current_ops().xor_popcount(a, b, words);
}
inline std::uint64_t andnot_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                     std::size_t words) {
  return current_ops().andnot_popcount(a, b, words);
}

} // namespace cogedit::kernels
