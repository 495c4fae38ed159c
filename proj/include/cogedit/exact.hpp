#pragma once
// Exact solver: subset dynamic program over all vertex subsets. For a subset
// X, f(X) = 0 when |X| < 4, else the minimum over bipartitions (Y, X\Y) with
// the top vertex of X pinned in Y of f(Y) + f(X\Y) + the cheaper of making
// the cut empty (parallel) or complete (series). Deletion bans insertions,
// completion bans deletions; a banned positive cut saturates to a sentinel
// above every real cost. Bipartitions are walked in Gray order so each step
// moves one vertex and the crossing sums update with one kernel call.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogedit/cotree.hpp"
#include "cogedit/graph.hpp"

namespace cogedit {

enum class Variant { editing, deletion, completion };
enum class InnerEngine { gray, branch_bound };

const char* variant_name(Variant v);
std::optional<Variant> parse_variant(const std::string& s);

struct SizeExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SubsetMask = std::uint32_t;

// Strictly above any sum of real pair weights; used as the guard value for
// banned configurations. Saturating adds keep bounds at most this.
double cost_sentinel(const WeightMatrix& w);
inline double sat_add(double a, double b, double sentinel) {
  double s = a + b;
  return s < sentinel ? s : sentinel;
}

struct GrayStep {
  SubsetMask y = 0, c = 0; // current bipartition; y holds the top vertex of x
  int moved = -1;          // vertex moved by this step
  bool into_c = false;
};

// Yields the 2^(popcount(x)-1) - 1 bipartitions of x with the top vertex
// pinned in y, consecutive yields differing by one moved vertex.
class GrayBipartitions {
 public:
  explicit GrayBipartitions(SubsetMask x); // popcount(x) >= 2
  std::optional<GrayStep> next();

 private:
  SubsetMask x_ = 0, c_ = 0;
  std::uint32_t t_ = 1, end_ = 0;
  int verts_[32] = {};
};

// Walks the same Gray order reporting incrementally maintained weighted
// crossing sums (unguarded). Reference path shared with the solver.
void enumerate_bipartitions_with_costs(
    const Graph& g, const WeightMatrix& w, SubsetMask x,
    const std::function<void(SubsetMask y, SubsetMask c, double par, double ser)>& fn);

struct ExactOptions {
  Variant variant = Variant::editing;
  InnerEngine inner = InnerEngine::gray;
  int max_n = 26;              // raiseable; hard representation cap is 30
  bool force_weighted = false; // disable the unit-weight fast path (tests)
  int bb_enum_threshold = 4;
};

struct SolveStats {
  std::uint64_t subsets = 0;       // subsets solved through the recurrence
  std::uint64_t bipartitions = 0;  // bipartitions costed (either engine)
  std::uint64_t bb_subproblems = 0;
  std::uint64_t bb_pruned = 0;
};

struct ExactResult {
  double cost = 0.0;
  EditSet edits;
  Cotree cotree;
  SolveStats stats;
};

// DP table bytes for order n (cost + choice tables).
std::size_t exact_table_bytes(int n);

ExactResult solve_exact(const Graph& g, const WeightMatrix& w,
                        const ExactOptions& opt = {});
ExactResult solve_exact(const Graph& g, const ExactOptions& opt = {});

// The full table f over all 2^n subset masks (backtracking data discarded).
std::vector<double> subset_cost_table(const Graph& g, const WeightMatrix& w,
                                      const ExactOptions& opt = {});

} // namespace cogedit
