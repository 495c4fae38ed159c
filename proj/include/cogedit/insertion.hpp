#pragma once
// Dynamic cotree supporting one-vertex insertion with minimum fill.
//
// For the current tree with leaf set W, a neighborhood M of a new vertex v is
// attachable (H + v stays a cograph) iff M has one of these shapes, where
// L(x) is the leaf set under node x and A(x) is the set of leaves adjacent to
// everything below x (A(root) = {}, A(c) = A(u) + (L(u)-L(c) if u is series)
// for c a child of u):
//   - M = A(x)                 for any node x (v parallel-attached at x)
//   - M = A(x) + L(x)          for any node x (v series-attached at x)
//   - M = A(p) + L(R0)         p parallel internal, R0 a subset of p's children
//   - M = A(p) + L(p) - L(R0)  p series internal, R0 a subset of p's children
// The subset families decompose per child, so the best R0 for a fixed
// objective is chosen greedily. |R0| of 0, 1, or all degenerate to the point
// shapes and are skipped.

#include <cstdint>
#include <vector>

#include "cogedit/bits.hpp"
#include "cogedit/cotree.hpp"

namespace cogedit {

class DynCotree {
 public:
  DynCotree() = default;
  explicit DynCotree(int capacity) { reset(capacity); }

  void reset(int capacity);
  int capacity() const { return cap_; }
  int inserted_count() const { return leaf_total_; }
  const Bits& vertex_set() const { return present_; }

  enum class AttachMode : std::uint8_t { par_point, ser_point, bundle };

  struct Fill {
    long long cost = 0;      // |m symmetric-difference target|
    Bits m;                  // chosen neighborhood
    int node = -1;           // attach position (-1: tree was empty)
    AttachMode mode = AttachMode::par_point;
    std::vector<int> bundle; // child node ids, mode == bundle only
  };

  // Cheapest attachable neighborhood M with lower as a subset of M,
  // minimizing |M delta target|; equal-cost ties pick the lexicographically
  // smallest M delta target (lowest differing bit wins). Requires lower to be
  // a subset of target and target a subset of vertex_set(). Always feasible:
  // M = vertex_set() is attachable at the root.
  Fill best_fill(const Bits& lower, const Bits& target);

  // Attaches vertex v (not yet present) at the position a best_fill against
  // the current state returned.
  void attach(int v, const Fill& f);
  // Attach with an exact neighborhood m; throws std::logic_error if m is not
  // attachable as-is.
  void attach_exact(int v, const Bits& m);

  Cotree snapshot() const;

 private:
  struct Node {
    Cotree::Label label = Cotree::Label::leaf;
    int vertex = -1;
    int parent = -1;
    std::vector<int> children;
  };

  int new_leaf(int v);
  int new_internal(Cotree::Label label);
  void add_child(int parent, int child);
  void replace_child(int parent, int oldc, int newc);
  void compute_sets(); // fills l_/a_ arenas and order_
  const std::uint64_t* lbits(int node) const { return l_.data() + std::size_t(node) * words_; }
  const std::uint64_t* abits(int node) const { return a_.data() + std::size_t(node) * words_; }
  std::uint64_t* lbits(int node) { return l_.data() + std::size_t(node) * words_; }
  std::uint64_t* abits(int node) { return a_.data() + std::size_t(node) * words_; }

  std::vector<Node> nodes_;
  int root_ = -1;
  int cap_ = 0;
  int words_ = 0;
  int leaf_total_ = 0;
  Bits present_;

  // scratch reused across best_fill calls
  std::vector<std::uint64_t> l_, a_;
  std::vector<int> order_; // post-order of all nodes
};

} // namespace cogedit
