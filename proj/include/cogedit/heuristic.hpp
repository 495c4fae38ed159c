#pragma once
// Incremental editing heuristics built on one-vertex cotree insertion. A run
// inserts vertices one at a time into a growing cograph; each step picks the
// new vertex's realized neighborhood M among the already-inserted vertices
// and pays |M delta N|, N being the input neighborhood there. Steps touch
// pairwise-disjoint vertex pairs, so the summed step costs equal the edit
// distance between the input and the final graph.

#include <cstdint>
#include <string>
#include <vector>

#include "cogedit/bits.hpp"
#include "cogedit/cotree.hpp"
#include "cogedit/graph.hpp"
#include "cogedit/insertion.hpp"

namespace cogedit {

enum class HeurVariant : std::uint8_t {
  standard,        // random insertion order, best single fill per step
  modify,          // also try dropping one incident edge before filling
  choose_multiple, // sample several next vertices, insert the cheapest
  beam_search,     // keep several partial solutions per step
  choose_all,      // try every next vertex, insert the cheapest
};

const char* heur_variant_name(HeurVariant v);
HeurVariant parse_heur_variant(const std::string& name); // throws std::invalid_argument
int default_reps(HeurVariant v);

struct HeurConfig {
  HeurVariant variant = HeurVariant::standard;
  int reps = 0;        // 0 picks default_reps(variant)
  int candidates = 10; // choose-multiple sample size / beam-search tries per beam
  int beam_width = 10;
  std::uint64_t seed = 1;
};

// One partial solution: the edited cograph over the inserted prefix, kept as
// a cotree plus the complement graph's cotree so fills can be planned on
// either side.
class HeuristicState {
 public:
  explicit HeuristicState(const Graph& input);

  struct Plan {
    long long cost = 0;         // |m delta input-neighborhood|
    bool on_complement = false; // tree the fill targets
    DynCotree::Fill fill;
    Bits m;                     // realized neighborhood among inserted vertices
  };

  // Cheapest insertion plan for v; ties keep the earliest candidate (direct
  // fill first, complement fill second, then the one-edge-drop variants).
  Plan plan_step(int v, bool modify);
  void apply(int v, const Plan& p);
  void step(int v, bool modify) { apply(v, plan_step(v, modify)); }

  long long cost() const { return cost_; }
  int inserted_count() const { return inserted_.count(); }
  const Bits& inserted() const { return inserted_; }
  const Graph& realized() const { return realized_; }
  Cotree cotree() const { return t_.snapshot(); }

  // Equal iff the same vertices were inserted and realized identically.
  friend bool operator==(const HeuristicState& a, const HeuristicState& b) {
    return a.inserted_ == b.inserted_ && a.realized_ == b.realized_;
  }

 private:
  const Graph* input_ = nullptr;
  DynCotree t_, tc_;
  Graph realized_;
  Bits inserted_;
  long long cost_ = 0;
};

struct HeurResult {
  Graph graph;        // edited cograph
  EditSet edits;      // toggles turning the input into graph
  long long cost = 0; // |edits|
  Cotree cotree;      // cotree of graph
};

HeurResult run_heuristic(const Graph& g, const HeurConfig& cfg);

} // namespace cogedit
