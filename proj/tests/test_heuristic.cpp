#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cogedit/cotree.hpp"
#include "cogedit/exact.hpp"
#include "cogedit/graph.hpp"
#include "cogedit/heuristic.hpp"
#include "cogedit/rng.hpp"
#include "oracles.hpp"

using namespace cogedit;

namespace {

const HeurVariant kAllVariants[] = {HeurVariant::standard, HeurVariant::modify,
                                    HeurVariant::choose_multiple,
                                    HeurVariant::beam_search, HeurVariant::choose_all};

void check_result(const Graph& g, const HeurResult& r) {
  CHECK(distance(apply_edits(g, r.edits), r.graph) == 0);
  CHECK(double(r.edits.size()) == r.cost);
  CHECK(double(distance(g, r.graph)) == r.cost);
  Graph realized = cotree_to_graph(r.cotree);
  REQUIRE(realized.n() == g.n());
  CHECK(distance(realized, r.graph) == 0);
  if (g.n() <= 10)
    CHECK(oracle::is_cograph_brute(r.graph));
  else
    CHECK_NOTHROW(build_cotree(r.graph));
}

} // namespace

TEST_CASE("variant names round-trip and defaults are wired") {
  for (HeurVariant v : kAllVariants) CHECK(parse_heur_variant(heur_variant_name(v)) == v);
  CHECK_THROWS_AS(parse_heur_variant("fastest"), std::invalid_argument);
  CHECK(default_reps(HeurVariant::standard) == 100);
  CHECK(default_reps(HeurVariant::modify) == 100);
  CHECK(default_reps(HeurVariant::choose_multiple) == 100);
  CHECK(default_reps(HeurVariant::beam_search) == 10);
  CHECK(default_reps(HeurVariant::choose_all) == 1);
}

TEST_CASE("every variant returns a valid edit to a cograph") {
  auto rng = make_rng(0x4E0u);
  for (int iter = 0; iter < 8; ++iter) {
    int n = 6 + int(rng() % 7);
    Graph g = oracle::random_graph(n, 0.2 + 0.1 * double(iter % 5), rng);
    for (HeurVariant v : kAllVariants) {
      HeurConfig cfg;
      cfg.variant = v;
      cfg.reps = 3;
      cfg.seed = 17 + iter;
      HeurResult r = run_heuristic(g, cfg);
      check_result(g, r);
    }
  }
}

TEST_CASE("cograph inputs come back untouched under every insertion order") {
  auto rng = make_rng(0x4E1u);
  for (int iter = 0; iter < 10; ++iter) {
    // random cograph built from random edits of a small graph solved exactly
    int n = 6 + int(rng() % 5);
    Graph seed = oracle::random_graph(n, 0.5, rng);
    Graph g = apply_edits(seed, solve_exact(seed).edits);
    REQUIRE(oracle::is_cograph_brute(g));
    for (HeurVariant v : kAllVariants) {
      HeurConfig cfg;
      cfg.variant = v;
      cfg.reps = 2;
      cfg.seed = rng();
      HeurResult r = run_heuristic(g, cfg);
      CHECK(r.cost == 0.0);
      CHECK(distance(r.graph, g) == 0);
    }
  }
}

TEST_CASE("the path on four vertices needs exactly one edit") {
  Graph g(4);
  g.set_edge(0, 1, true);
  g.set_edge(1, 2, true);
  g.set_edge(2, 3, true);
  for (HeurVariant v : kAllVariants) {
    HeurConfig cfg;
    cfg.variant = v;
    cfg.reps = 1;
    cfg.seed = 5;
    HeurResult r = run_heuristic(g, cfg);
    CHECK(r.cost == 1.0);
    check_result(g, r);
  }
}

TEST_CASE("heuristic cost never beats the exact optimum") {
  auto rng = make_rng(0x4E2u);
  for (int iter = 0; iter < 12; ++iter) {
    int n = 7 + int(rng() % 4);
    Graph g = oracle::random_graph(n, 0.4, rng);
    double exact = solve_exact(g).cost;
    for (HeurVariant v : kAllVariants) {
      HeurConfig cfg;
      cfg.variant = v;
      cfg.reps = 4;
      cfg.seed = 3 * iter + 1;
      CHECK(run_heuristic(g, cfg).cost >= exact);
    }
  }
}

TEST_CASE("identical configurations give identical results") {
  auto rng = make_rng(0x4E3u);
  Graph g = oracle::random_graph(14, 0.35, rng);
  for (HeurVariant v : kAllVariants) {
    HeurConfig cfg;
    cfg.variant = v;
    cfg.reps = 4;
    cfg.seed = 99;
    HeurResult a = run_heuristic(g, cfg);
    HeurResult b = run_heuristic(g, cfg);
    CHECK(a.cost == b.cost);
    CHECK(a.edits.pairs == b.edits.pairs);
    CHECK(a.cotree.to_term() == b.cotree.to_term());
  }
}

TEST_CASE("more repetitions never hurt") {
  auto rng = make_rng(0x4E4u);
  Graph g = oracle::random_graph(13, 0.4, rng);
  for (HeurVariant v : {HeurVariant::standard, HeurVariant::modify,
                        HeurVariant::choose_multiple}) {
    HeurConfig cfg;
    cfg.variant = v;
    cfg.seed = 7;
    double prev = -1.0;
    for (int reps : {1, 4, 16}) {
      cfg.reps = reps;
      double c = run_heuristic(g, cfg).cost;
      if (prev >= 0.0) CHECK(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("degenerate sizes and parameter errors are handled") {
  for (int n : {0, 1, 2}) {
    Graph g(n);
    if (n == 2) g.set_edge(0, 1, true);
    for (HeurVariant v : kAllVariants) {
      HeurConfig cfg;
      cfg.variant = v;
      cfg.reps = 1;
      HeurResult r = run_heuristic(g, cfg);
      CHECK(r.cost == 0.0);
      CHECK(distance(r.graph, g) == 0);
    }
  }

  Graph g(5);
  HeurConfig bad;
  bad.candidates = 0;
  CHECK_THROWS_AS(run_heuristic(g, bad), std::invalid_argument);
  bad = HeurConfig{};
  bad.beam_width = 0;
  CHECK_THROWS_AS(run_heuristic(g, bad), std::invalid_argument);
}

TEST_CASE("narrow beams and single candidates still work") {
  auto rng = make_rng(0x4E5u);
  Graph g = oracle::random_graph(10, 0.4, rng);
  HeurConfig cfg;
  cfg.variant = HeurVariant::beam_search;
  cfg.beam_width = 1;
  cfg.candidates = 1;
  cfg.reps = 2;
  check_result(g, run_heuristic(g, cfg));
  cfg.variant = HeurVariant::choose_multiple;
  cfg.candidates = 1;
  check_result(g, run_heuristic(g, cfg));
}
