#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"

#include "cogedit/cotree.hpp"
#include "cogedit/exact.hpp"
#include "cogedit/graph.hpp"
#include "cogedit/rng.hpp"
#include "oracles.hpp"

using namespace cogedit;

namespace {

Graph path4() {
  Graph g(4);
  g.set_edge(0, 1, true);
  g.set_edge(1, 2, true);
  g.set_edge(2, 3, true);
  return g;
}

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

// dyadic weights keep every cost sum exact in double arithmetic
WeightMatrix random_dyadic_weights(int n, std::mt19937_64& rng) {
  static const double vals[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  WeightMatrix w(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) w.set(u, v, vals[rng() % 5]);
  return w;
}

void check_solution(const Graph& g, Variant variant, const ExactResult& r) {
  Graph edited = apply_edits(g, r.edits);
  CHECK(oracle::is_cograph_brute(edited));
  CHECK(r.cost == double(r.edits.size())); // unit weights
  for (auto [u, v] : r.edits.pairs) {
    if (variant == Variant::deletion) CHECK(g.adjacent(u, v));
    if (variant == Variant::completion) CHECK(!g.adjacent(u, v));
  }
  Graph realized = cotree_to_graph(r.cotree);
  REQUIRE(realized.n() == g.n());
  CHECK(distance(realized, edited) == 0);
}

} // namespace

TEST_CASE("graphs on fewer than four vertices cost nothing") {
  auto rng = make_rng(0xE0u);
  for (int n = 0; n <= 3; ++n) {
    Graph g = oracle::random_graph(n, 0.5, rng);
    ExactResult r = solve_exact(g);
    CHECK(r.cost == 0.0);
    CHECK(r.edits.size() == 0);
    if (n > 0) {
      Graph realized = cotree_to_graph(r.cotree);
      REQUIRE(realized.n() == n);
      CHECK(distance(realized, g) == 0);
    }
  }
}

TEST_CASE("path and cycle examples have known optimal costs") {
  Graph p4 = path4();
  for (auto variant : {Variant::editing, Variant::deletion, Variant::completion}) {
    for (auto inner : {InnerEngine::gray, InnerEngine::branch_bound}) {
      ExactOptions opt;
      opt.variant = variant;
      opt.inner = inner;
      ExactResult r = solve_exact(p4, opt);
      CHECK(r.cost == 1.0);
      check_solution(p4, variant, r);
    }
  }

  Graph c5(5);
  for (int i = 0; i < 5; ++i) c5.set_edge(i, (i + 1) % 5, true);
  ExactResult r = solve_exact(c5);
  CHECK(r.cost == 2.0);
  check_solution(c5, Variant::editing, r);
}

TEST_CASE("exact costs match the search oracle for every variant and engine") {
  auto rng = make_rng(0xE1u);
  for (int iter = 0; iter < 36; ++iter) {
    int n = 4 + iter % 4;
    Graph g = oracle::random_graph(n, 0.3 + 0.05 * double(iter % 9), rng);
    for (auto variant : {Variant::editing, Variant::deletion, Variant::completion}) {
      long long want = oracle::edit_oracle(g, variant);
      for (auto inner : {InnerEngine::gray, InnerEngine::branch_bound}) {
        ExactOptions opt;
        opt.variant = variant;
        opt.inner = inner;
        ExactResult r = solve_exact(g, opt);
        CHECK(r.cost == double(want));
        check_solution(g, variant, r);
      }
    }
  }
}

TEST_CASE("editing cost is invariant under graph complement") {
  auto rng = make_rng(0xE2u);
  for (int iter = 0; iter < 20; ++iter) {
    Graph g = oracle::random_graph(5 + int(rng() % 4), 0.5, rng);
    CHECK(solve_exact(g).cost == solve_exact(complement(g)).cost);
  }
}

TEST_CASE("deletion on a graph equals completion on its complement") {
  auto rng = make_rng(0xE3u);
  for (int iter = 0; iter < 20; ++iter) {
    Graph g = oracle::random_graph(5 + int(rng() % 4), 0.5, rng);
    ExactOptions del, com;
    del.variant = Variant::deletion;
    com.variant = Variant::completion;
    CHECK(solve_exact(g, del).cost == solve_exact(complement(g), com).cost);
  }
}

TEST_CASE("scaling all weights scales the cost and keeps the same solution") {
  auto rng = make_rng(0xE4u);
  for (int iter = 0; iter < 12; ++iter) {
    int n = 5 + int(rng() % 3);
    Graph g = oracle::random_graph(n, 0.5, rng);
    WeightMatrix w = random_dyadic_weights(n, rng);
    WeightMatrix w2(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) w2.set(u, v, 2.0 * w.at(u, v));
    ExactResult a = solve_exact(g, w);
    ExactResult b = solve_exact(g, w2);
    CHECK(b.cost == 2.0 * a.cost);
    CHECK(a.edits.pairs == b.edits.pairs);
    CHECK(a.cotree.to_term() == b.cotree.to_term());
    CHECK(a.cost == a.edits.weight(w));
  }
}

TEST_CASE("unit-weight fast path agrees with the general weighted path") {
  auto rng = make_rng(0xE5u);
  for (int iter = 0; iter < 16; ++iter) {
    Graph g = oracle::random_graph(5 + int(rng() % 4), 0.45, rng);
    ExactOptions plain, forced;
    forced.force_weighted = true;
    if (iter % 2) {
      plain.variant = Variant::deletion;
      forced.variant = Variant::deletion;
    }
    ExactResult a = solve_exact(g, plain);
    ExactResult b = solve_exact(g, forced);
    CHECK(a.cost == b.cost);
    CHECK(a.edits.pairs == b.edits.pairs);
    CHECK(a.cotree.to_term() == b.cotree.to_term());
  }
}

TEST_CASE("weighted solving matches exhaustive search on tiny graphs") {
  auto rng = make_rng(0xE6u);
  for (int iter = 0; iter < 12; ++iter) {
    int n = 4 + int(rng() % 2);
    Graph g = oracle::random_graph(n, 0.5, rng);
    WeightMatrix w = random_dyadic_weights(n, rng);
    for (auto variant : {Variant::editing, Variant::deletion, Variant::completion}) {
      ExactOptions opt;
      opt.variant = variant;
      double want = oracle::weighted_edit_oracle(g, w, variant);
      REQUIRE(want >= 0.0);
      ExactResult r = solve_exact(g, w, opt);
      CHECK(r.cost == want);
      CHECK(r.cost == r.edits.weight(w));
      CHECK(oracle::is_cograph_brute(apply_edits(g, r.edits)));
    }
  }
}

TEST_CASE("solver statistics count subsets and gray bipartitions exactly") {
  auto rng = make_rng(0xE7u);
  for (int n : {6, 8, 10}) {
    Graph g = oracle::random_graph(n, 0.5, rng);
    ExactResult r = solve_exact(g);
    std::uint64_t subsets = 0, bips = 0;
    for (int k = 4; k <= n; ++k) {
      subsets += choose(n, k);
      bips += choose(n, k) * ((std::uint64_t(1) << (k - 1)) - 1);
    }
    CHECK(r.stats.subsets == subsets);
    CHECK(r.stats.bipartitions == bips);
    CHECK(r.stats.bb_subproblems == 0);
  }
}

TEST_CASE("gray order yields every proper bipartition once, one move at a time") {
  auto rng = make_rng(0xE8u);
  for (int iter = 0; iter < 25; ++iter) {
    int m = 2 + int(rng() % 9);
    SubsetMask x = 0;
    while (std::popcount(x) < m) x |= SubsetMask(1) << (rng() % 16);
    SubsetMask top = SubsetMask(1) << (31 - std::countl_zero(x));

    GrayBipartitions gray(x);
    std::set<SubsetMask> seen;
    SubsetMask prev_c = 0;
    std::uint64_t count = 0;
    while (auto st = gray.next()) {
      ++count;
      CHECK((st->y | st->c) == x);
      CHECK((st->y & st->c) == 0u);
      CHECK((st->y & top) == top);
      CHECK(st->c != 0u);
      SubsetMask moved = SubsetMask(1) << st->moved;
      CHECK((prev_c ^ st->c) == moved);
      CHECK(((st->c & moved) != 0u) == st->into_c);
      CHECK(seen.insert(st->c).second);
      prev_c = st->c;
    }
    int mm = std::popcount(x);
    CHECK(count == (std::uint64_t(1) << (mm - 1)) - 1);
  }
}

TEST_CASE("incremental crossing sums equal direct recomputation") {
  auto rng = make_rng(0xE9u);
  int checked = 0;
  for (int iter = 0; iter < 60; ++iter) {
    int n = 12;
    Graph g = oracle::random_graph(n, 0.5, rng);
    WeightMatrix w(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) w.set(u, v, double(1 + rng() % 7));
    SubsetMask x = 0;
    int m = 2 + int(rng() % 7);
    while (std::popcount(x) < m) x |= SubsetMask(1) << (rng() % n);
    enumerate_bipartitions_with_costs(
        g, w, x, [&](SubsetMask y, SubsetMask c, double par, double ser) {
          CHECK(par == par_cost(g, w, y, c));
          CHECK(ser == ser_cost(g, w, y, c));
          ++checked;
        });
  }
  CHECK(checked >= 1000);
}

TEST_CASE("subset cost table is monotone and consistent with full solves") {
  auto rng = make_rng(0xEAu);
  Graph g = oracle::random_graph(8, 0.5, rng);
  WeightMatrix w(8);
  std::vector<double> f = subset_cost_table(g, w);
  REQUIRE(f.size() == std::size_t(1) << 8);
  CHECK(f[(1u << 8) - 1] == solve_exact(g).cost);
  for (SubsetMask x = 0; x < (1u << 8); ++x)
    if (std::popcount(x) < 4) CHECK(f[x] == 0.0);
  for (int iter = 0; iter < 400; ++iter) {
    SubsetMask y = SubsetMask(rng() & 0xFF);
    SubsetMask x = y & SubsetMask(rng() & 0xFF);
    CHECK(f[x] <= f[y]);
  }
  for (int iter = 0; iter < 6; ++iter) {
    SubsetMask x = SubsetMask(rng() & 0xFF);
    Graph h = induced_subgraph(g, x);
    if (h.n() >= 1) CHECK(f[x] == solve_exact(h).cost);
  }
}

TEST_CASE("size limits raise descriptive errors") {
  Graph g27(27);
  CHECK_THROWS_AS(solve_exact(g27), SizeExceededError);
  try {
    solve_exact(g27);
  } catch (const SizeExceededError& e) {
    CHECK(std::string(e.what()).find("max-n") != std::string::npos);
  }

  ExactOptions high;
  high.max_n = 30;
  Graph g31(31);
  CHECK_THROWS_AS(solve_exact(g31, high), SizeExceededError); // hard cap

  // the limit is a real gate in both directions
  Graph g14(14);
  ExactOptions tight;
  tight.max_n = 10;
  CHECK_THROWS_AS(solve_exact(g14, tight), SizeExceededError);
  CHECK(solve_exact(g14).cost == 0.0);
}
