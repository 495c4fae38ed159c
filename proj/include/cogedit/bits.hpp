#pragma once
// Small dynamic bitset over u64 words. Trailing bits past size() stay zero;
// every operation preserves that invariant.

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace cogedit {

class Bits {
 public:
  Bits() = default;
  explicit Bits(int nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

  int size() const { return n_; }
  int words() const { return static_cast<int>(w_.size()); }
  std::uint64_t* data() { return w_.data(); }
  const std::uint64_t* data() const { return w_.data(); }

  bool test(int i) const {
    assert(i >= 0 && i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] |= std::uint64_t(1) << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }
  void clear() {
    for (auto& w : w_) w = 0;
  }

  void copy_from(const std::uint64_t* src) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] = src[i];
  }

  Bits& operator&=(const Bits& o) {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator^=(const Bits& o) {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  // this &= ~o
  Bits& and_not(const Bits& o) {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool subset_of(const Bits& o) const {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    assert(o.n_ == n_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  int lowest() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(64 * i) + std::countr_zero(w_[i]);
    return -1;
  }

  template <typename F>
  void for_each(F f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        f(static_cast<int>(64 * i) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

} // namespace cogedit
