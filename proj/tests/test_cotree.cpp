#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "cogedit/cotree.hpp"
#include "oracles.hpp"

using namespace cogedit;

namespace {

// random canonical-shaped cotree: alternating labels, >= 2 children per
// internal node, random child order
Cotree random_cotree(int n, std::mt19937_64& rng) {
  Cotree t;
  if (n == 0) return t;
  std::vector<int> verts;
  for (int i = 0; i < n; ++i) verts.push_back(i);
  std::shuffle(verts.begin(), verts.end(), rng);
  auto build = [&](auto&& self, std::vector<int> vs, Cotree::Label label) -> int {
    if (vs.size() == 1) return t.add_leaf(vs[0]);
    int parts = 2 + int(rng() % std::min<std::size_t>(3, vs.size() - 1));
    std::vector<std::vector<int>> group;
    group.resize(std::size_t(parts));
    for (std::size_t i = 0; i < vs.size(); ++i)
      group[i < std::size_t(parts) ? i : rng() % std::size_t(parts)].push_back(vs[i]);
    Cotree::Label child = label == Cotree::Label::series ? Cotree::Label::parallel
                                                         : Cotree::Label::series;
    std::vector<int> kids;
    for (auto& gvs : group) kids.push_back(self(self, std::move(gvs), child));
    return t.add_internal(label, std::move(kids));
  };
  Cotree::Label top = rng() % 2 ? Cotree::Label::series : Cotree::Label::parallel;
  if (n == 1) {
    t.root = t.add_leaf(verts[0]);
  } else {
    t.root = build(build, verts, top);
  }
  return t;
}

} // namespace

TEST_CASE("cotree realization and term printing") {
  Cotree t;
  int l0 = t.add_leaf(0), l1 = t.add_leaf(1), l2 = t.add_leaf(2);
  int p = t.add_internal(Cotree::Label::parallel, {l1, l2});
  t.root = t.add_internal(Cotree::Label::series, {l0, p});
  CHECK(t.leaf_count() == 3);
  CHECK(t.to_term() == "S(0,P(1,2))");
  Graph g = cotree_to_graph(t);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(0, 2));
  CHECK_FALSE(g.adjacent(1, 2));

  Cotree empty;
  CHECK(empty.to_term() == "()");
  CHECK(cotree_to_graph(empty).n() == 0);
}

TEST_CASE("canonicalize collapses and orders") {
  // P(P(3,1),S(2),0) has a same-label child and a single-child internal
  Cotree t;
  int l3 = t.add_leaf(3), l1 = t.add_leaf(1), l2 = t.add_leaf(2), l0 = t.add_leaf(0);
  int inner = t.add_internal(Cotree::Label::parallel, {l3, l1});
  int single = t.add_internal(Cotree::Label::series, {l2});
  t.root = t.add_internal(Cotree::Label::parallel, {inner, single, l0});
  t.canonicalize();
  CHECK(t.to_term() == "P(0,1,2,3)");
  t.canonicalize();
  CHECK(t.to_term() == "P(0,1,2,3)"); // idempotent
}

TEST_CASE("build_cotree roundtrip against random cotrees") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 300; ++iter) {
    int n = 1 + int(rng() % 12);
    Cotree t0 = random_cotree(n, rng);
    Graph g = cotree_to_graph(t0);
    REQUIRE(oracle::is_cograph_brute(g));
    Cotree t1 = build_cotree(g);
    CHECK(cotree_to_graph(t1) == g);
    t0.canonicalize();
    CHECK(t1.to_term() == t0.to_term()); // canonical form is unique
  }
}

TEST_CASE("build_cotree root label tracks connectivity") {
  Graph k2(2);
  k2.set_edge(0, 1, true);
  CHECK(build_cotree(k2).to_term() == "S(0,1)");
  Graph e2(2);
  CHECK(build_cotree(e2).to_term() == "P(0,1)");
  Graph one(1);
  CHECK(build_cotree(one).to_term() == "0");
  CHECK(build_cotree(Graph(0)).empty());
}

TEST_CASE("build_cotree throws a valid witness on non-cographs") {
  std::mt19937_64 rng(99);
  int caught = 0;
  for (int iter = 0; iter < 200; ++iter) {
    int n = 4 + int(rng() % 9);
    Graph g = oracle::random_graph(n, 0.5, rng);
    bool cog = oracle::is_cograph_brute(g);
    try {
      Cotree t = build_cotree(g);
      CHECK(cog);
      CHECK(cotree_to_graph(t) == g);
    } catch (const NotCographError& e) {
      CHECK_FALSE(cog);
      ++caught;
      auto [a, b, c, d] = e.witness;
      CHECK(g.adjacent(a, b));
      CHECK(g.adjacent(b, c));
      CHECK(g.adjacent(c, d));
      CHECK_FALSE(g.adjacent(a, c));
      CHECK_FALSE(g.adjacent(a, d));
      CHECK_FALSE(g.adjacent(b, d));
    }
  }
  CHECK(caught > 50); // density 0.5 mostly not a cograph
}

TEST_CASE("find_induced_p4 agrees with the brute scan") {
  std::mt19937_64 rng(2025);
  for (int iter = 0; iter < 300; ++iter) {
    int n = int(rng() % 11);
    Graph g = oracle::random_graph(n, 0.4, rng);
    auto got = find_induced_p4(g);
    auto want = oracle::find_p4_brute(g);
    CHECK(got.has_value() == want.has_value());
    if (got) {
      auto [a, b, c, d] = *got;
      CHECK(g.adjacent(a, b));
      CHECK(g.adjacent(b, c));
      CHECK(g.adjacent(c, d));
      CHECK_FALSE(g.adjacent(a, c));
      CHECK_FALSE(g.adjacent(a, d));
      CHECK_FALSE(g.adjacent(b, d));
    }
    // the limited overload sees exactly the prefix
    for (int limit = 0; limit <= n; ++limit) {
      auto lim = find_induced_p4(g, limit);
      std::uint64_t mask = limit >= 64 ? ~0ull : (1ull << limit) - 1;
      bool want_lim = !oracle::is_cograph_brute(induced_subgraph(g, mask));
      CHECK(lim.has_value() == want_lim);
      if (lim)
        for (int v : *lim) CHECK(v < limit);
    }
  }
}

TEST_CASE("p4_through_pair agrees with the brute scan") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 150; ++iter) {
    int n = 4 + int(rng() % 6);
    Graph g = oracle::random_graph(n, 0.45, rng);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        bool want = false;
        for (int a = 0; a < n && !want; ++a)
          for (int b = a + 1; b < n && !want; ++b)
            for (int c = b + 1; c < n && !want; ++c)
              for (int d = c + 1; d < n && !want; ++d) {
                bool has_u = a == u || b == u || c == u || d == u;
                bool has_v = a == v || b == v || c == v || d == v;
                if (has_u && has_v && oracle::four_set_is_p4(g, a, b, c, d))
                  want = true;
              }
        CHECK(p4_through_pair(g, u, v) == want);
      }
  }
}
