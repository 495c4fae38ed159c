#pragma once
// Inner accelerator: best-first branch and bound over the bipartitions of one
// subset X, replacing the full Gray walk. A subproblem fixes the split's node
// type and a constraint forest (groups known to share a side; frozen group
// pairs known to be separated). Lower bounds accumulate f-superadditivity
// increments on merges and guarded crossing weight on separations. A shared
// dedup set across both root trees guarantees that at most 2^(|X|-1)-1
// bipartitions are ever costed.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cogedit/exact.hpp"
#include "cogedit/graph.hpp"

namespace cogedit::bb {

struct BBOptions {
  Variant variant = Variant::editing;
  // Stop branching and enumerate once this few active groups remain.
  int enum_threshold = 4;
};

struct BBStats {
  std::uint64_t subproblems = 0; // expanded nodes
  std::uint64_t evaluated = 0;   // bipartitions costed
  std::uint64_t pruned = 0;      // nodes discarded by bound
};

// Slot-indexed over the vertices of x in ascending order. Group data (mask,
// frozen, crossing-sum rows) is valid at union-find roots; merges keep the
// lower slot as root, so a root's slot is also its group's minimum vertex.
struct Subproblem {
  NodeKind kind = NodeKind::parallel;
  double lb = 0.0;
  std::vector<std::int8_t> parent;
  std::vector<SubsetMask> mask;
  std::vector<std::uint8_t> frozen;
  std::vector<std::pair<std::int8_t, std::int8_t>> opp;
  std::vector<double> ew, nw; // m*m crossing edge / non-edge weight sums

  int find(int a) const {
    while (parent[a] != a) a = parent[a];
    return a;
  }
  std::vector<int> active_roots() const;
};

struct BBContext {
  const Graph* g = nullptr;
  const WeightMatrix* w = nullptr;
  std::span<const double> f;
  SubsetMask x = 0;
  Variant variant = Variant::editing;
  double sentinel = 0.0;
  int m = 0;
  int vx = 0;      // top vertex of x
  int vx_slot = 0;
  std::int8_t slot_of[32];
  std::int8_t vert_of[32];
  std::int8_t cpos[32]; // vertex -> bit position within x minus the top vertex
};

BBContext make_context(const Graph& g, const WeightMatrix& w, SubsetMask x,
                       std::span<const double> f, Variant variant);

// One all-singleton subproblem per node type.
std::pair<Subproblem, Subproblem> root_subproblems(const BBContext& ctx);

// f(a|b) - f(a) - f(b): cost forfeited by requiring a and b on one side.
double lb_increment_same(std::span<const double> f, SubsetMask a, SubsetMask b);
// Guarded crossing weight between two root groups forced apart.
double lb_increment_opp(const BBContext& ctx, const Subproblem& p, int ra, int rb);

// Branching pair among active roots: maximize min(same, opp) increment, then
// max(same, opp), then lowest slot pair.
std::pair<int, int> select_pair(const BBContext& ctx, const Subproblem& p);

// Children for the chosen pair: (same-side merge, forced-apart freeze). A
// merge that would swallow all of x admits no bipartition; its lb is the
// sentinel so it prunes immediately.
std::pair<Subproblem, Subproblem> branch(const BBContext& ctx, const Subproblem& p,
                                         int ra, int rb);

// Every bipartition consistent with p, reported as the side without the top
// vertex. Deterministic order.
void for_each_consistent(const BBContext& ctx, const Subproblem& p,
                         const std::function<void(SubsetMask c)>& fn);

struct BBResult {
  double cost = 0.0;
  SubsetMask c = 0;
  NodeKind kind = NodeKind::parallel;
};

// Exact inner minimum over bipartitions of x (top vertex pinned), given the
// DP table f for all proper subsets of x. upper, if finite, must be a valid
// upper bound; it prunes strictly-worse subtrees only.
BBResult solve_subset_bb(const Graph& g, const WeightMatrix& w, SubsetMask x,
                         std::span<const double> f, double upper,
                         const BBOptions& opt = {}, BBStats* stats = nullptr);

} // namespace cogedit::bb
