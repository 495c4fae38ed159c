#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cogedit/bits.hpp"
#include "cogedit/cotree.hpp"
#include "cogedit/graph.hpp"
#include "cogedit/insertion.hpp"
#include "cogedit/rng.hpp"
#include "oracles.hpp"

using cogedit::Bits;
using cogedit::DynCotree;
using cogedit::Graph;

namespace {

// Inserts vertices 0..n-1 of g in order, each with its cheapest completion
// fill (lower = true neighborhood among inserted). Returns the realized graph
// and leaves the tree holding it.
Graph build_by_insertion(DynCotree& t, const Graph& g) {
  Graph h(g.n());
  for (int v = 0; v < g.n(); ++v) {
    Bits nb(g.n());
    for (int u = 0; u < v; ++u)
      if (g.adjacent(u, v)) nb.set(u);
    DynCotree::Fill f = t.best_fill(nb, nb);
    t.attach(v, f);
    f.m.for_each([&](int u) { h.set_edge(v, u, true); });
  }
  return h;
}

} // namespace

TEST_CASE("empty tree accepts the first vertex with a zero fill") {
  DynCotree t(4);
  CHECK(t.capacity() == 4);
  CHECK(t.inserted_count() == 0);
  Bits none(4);
  DynCotree::Fill f = t.best_fill(none, none);
  CHECK(f.cost == 0);
  CHECK(f.m.none());
  CHECK(f.node == -1);
  t.attach(0, f);
  CHECK(t.inserted_count() == 1);
  CHECK(t.vertex_set().test(0));
}

TEST_CASE("path on three vertices: one insertion completes a star neighborhood") {
  // h = 0-1-2, new vertex 3 adjacent to 0 only. {0} alone leaves the path
  // 3-0-1-2, so one extra pair is needed; {0,1} and {0,2} both work and the
  // tie picks the lower differing bit.
  DynCotree t(4);
  t.attach_exact(0, Bits(4));
  Bits m1(4);
  m1.set(0);
  t.attach_exact(1, m1);
  Bits m2(4);
  m2.set(1);
  t.attach_exact(2, m2);

  Bits nb(4);
  nb.set(0);
  DynCotree::Fill f = t.best_fill(nb, nb);
  CHECK(f.cost == 1);
  CHECK(f.m.test(0));
  CHECK(f.m.test(1));
  CHECK(!f.m.test(2));

  t.attach(3, f);
  Graph r = cogedit::cotree_to_graph(t.snapshot());
  CHECK(r.adjacent(0, 1));
  CHECK(r.adjacent(1, 2));
  CHECK(r.adjacent(3, 0));
  CHECK(r.adjacent(3, 1));
  CHECK(!r.adjacent(3, 2));
  CHECK(!r.adjacent(0, 2));
  CHECK(oracle::is_cograph_brute(r));
}

TEST_CASE("attach_exact rejects a neighborhood that breaks the cograph") {
  DynCotree t(4);
  t.attach_exact(0, Bits(4));
  Bits m1(4);
  m1.set(0);
  t.attach_exact(1, m1);
  Bits m2(4);
  m2.set(1);
  t.attach_exact(2, m2);

  Bits bad(4);
  bad.set(0); // 3-0-1-2 is an induced path on four vertices
  CHECK_THROWS_AS(t.attach_exact(3, bad), std::logic_error);
  CHECK(t.inserted_count() == 3); // failed attach leaves the tree unchanged

  Bits good(4);
  good.set(1); // star centered at 1
  t.attach_exact(3, good);
  Graph r = cogedit::cotree_to_graph(t.snapshot());
  CHECK(oracle::is_cograph_brute(r));
  CHECK(r.adjacent(3, 1));
  CHECK(!r.adjacent(3, 0));
  CHECK(!r.adjacent(3, 2));
}

TEST_CASE("proper child subsets of a parallel node are reachable as bundles") {
  // Three isolated vertices; the new vertex wants exactly two of them, which
  // no single-node attach point offers.
  DynCotree t(4);
  for (int v = 0; v < 3; ++v) t.attach_exact(v, Bits(4));
  Bits want(4);
  want.set(0);
  want.set(1);
  DynCotree::Fill f = t.best_fill(want, want);
  CHECK(f.cost == 0);
  CHECK(f.m == want);
  CHECK(f.mode == DynCotree::AttachMode::bundle);
  CHECK(f.bundle.size() == 2);
  t.attach(3, f);
  Graph r = cogedit::cotree_to_graph(t.snapshot());
  CHECK(r.adjacent(3, 0));
  CHECK(r.adjacent(3, 1));
  CHECK(!r.adjacent(3, 2));
  CHECK(!r.adjacent(0, 1));
  CHECK(oracle::is_cograph_brute(r));
}

TEST_CASE("best_fill matches the brute-force minimum under a lower bound") {
  auto rng = cogedit::make_rng(0x1259u);
  for (int iter = 0; iter < 50; ++iter) {
    int n = 5 + int(rng() % 5);
    Graph g = oracle::random_graph(n, 0.5, rng);
    DynCotree t(n);
    Graph h(n);
    std::vector<int> ins;
    for (int v = 0; v < n; ++v) {
      // random probe with lower a subset of target a subset of the inserted
      Bits target(n), lower(n);
      for (int u : ins)
        if (rng() & 1) target.set(u);
      target.for_each([&](int u) {
        if (rng() & 1) lower.set(u);
      });
      DynCotree::Fill probe = t.best_fill(lower, target);
      CHECK(lower.subset_of(probe.m));
      Bits d = probe.m;
      d ^= target;
      CHECK(probe.cost == static_cast<long long>(d.count()));
      CHECK(probe.cost == oracle::min_fill_brute(h, ins, v, lower, target));
      {
        Graph h2 = h;
        probe.m.for_each([&](int u) { h2.set_edge(v, u, true); });
        CHECK(oracle::is_cograph_brute(h2));
      }

      // completion fill used for the actual insertion
      Bits nb(n);
      for (int u : ins)
        if (g.adjacent(u, v)) nb.set(u);
      DynCotree::Fill f = t.best_fill(nb, nb);
      CHECK(nb.subset_of(f.m));
      CHECK(f.cost == oracle::min_fill_brute(h, ins, v, nb, nb));
      t.attach(v, f);
      f.m.for_each([&](int u) { h.set_edge(v, u, true); });
      ins.push_back(v);
      CHECK(oracle::is_cograph_brute(h));
    }
    Graph r = cogedit::cotree_to_graph(t.snapshot());
    REQUIRE(r.n() == n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) CHECK(r.adjacent(u, v) == h.adjacent(u, v));
  }
}

TEST_CASE("completion fills are inclusion-minimal") {
  // Dropping any single added pair from an optimal completion must break the
  // cograph, else the smaller fill would have been optimal instead.
  auto rng = cogedit::make_rng(0x1260u);
  for (int iter = 0; iter < 40; ++iter) {
    int n = 5 + int(rng() % 4);
    Graph g = oracle::random_graph(n, 0.4, rng);
    DynCotree t(n);
    Graph h(n);
    std::vector<int> ins;
    for (int v = 0; v < n; ++v) {
      Bits nb(n);
      for (int u : ins)
        if (g.adjacent(u, v)) nb.set(u);
      DynCotree::Fill f = t.best_fill(nb, nb);
      Bits added = f.m;
      added.and_not(nb);
      added.for_each([&](int u) {
        Graph h2 = h;
        f.m.for_each([&](int w) {
          if (w != u) h2.set_edge(v, w, true);
        });
        CHECK(!oracle::is_cograph_brute(h2));
      });
      t.attach(v, f);
      f.m.for_each([&](int u) { h.set_edge(v, u, true); });
      ins.push_back(v);
    }
  }
}

TEST_CASE("reset clears the tree for reuse") {
  auto rng = cogedit::make_rng(0x1261u);
  Graph g = oracle::random_graph(7, 0.5, rng);
  DynCotree t(7);
  Graph h1 = build_by_insertion(t, g);
  CHECK(t.inserted_count() == 7);
  t.reset(7);
  CHECK(t.inserted_count() == 0);
  CHECK(t.vertex_set().none());
  Graph h2 = build_by_insertion(t, g);
  for (int u = 0; u < 7; ++u)
    for (int v = u + 1; v < 7; ++v) CHECK(h1.adjacent(u, v) == h2.adjacent(u, v));
}
