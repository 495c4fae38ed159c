#include "cogedit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "cogedit/cotree.hpp"
#include "cogedit/rng.hpp"

namespace cogedit {

Graph random_cograph(int n, double density, std::mt19937_64& rng) {
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
  if (!(density > 0.0 && density < 1.0))
    throw std::invalid_argument("density must lie in (0,1)");
  Graph g(n);
  std::vector<std::vector<int>> bins(n);
  for (int v = 0; v < n; ++v) bins[v] = {v};
  std::bernoulli_distribution join(density);
  while (bins.size() > 1) {
    int k = static_cast<int>(bins.size());
    int i = std::uniform_int_distribution<int>(0, k - 1)(rng);
    int j = std::uniform_int_distribution<int>(0, k - 2)(rng);
    if (j >= i) ++j;
    if (join(rng))
      for (int u : bins[i])
        for (int v : bins[j]) g.set_edge(u, v, true);
    int lo = std::min(i, j), hi = std::max(i, j);
    bins[lo].insert(bins[lo].end(), bins[hi].begin(), bins[hi].end());
    bins.erase(bins.begin() + hi);
  }
  return g;
}

double density_of(const Graph& g) {
  if (g.n() < 2) return 0.0;
  return double(g.edge_count()) / (double(g.n()) * (g.n() - 1) / 2.0);
}

Graph simulate_cograph(int n, double density, std::mt19937_64& rng, int retry) {
  for (int attempt = 0; attempt < retry; ++attempt) {
    Graph g = random_cograph(n, density, rng);
    if (std::fabs(density_of(g) - density) <= 0.1 * density) return g;
  }
  throw RetryLimitExceeded("no draw hit the density window");
}

int flip_count(int n, double rate) {
  return static_cast<int>(std::lround(rate * (double(n) * (n - 1) / 2.0)));
}

Graph perturb(const Graph& g, double rate, std::mt19937_64& rng) {
  if (!(rate >= 0.0 && rate < 1.0))
    throw std::invalid_argument("noise rate must lie in [0,1)");
  int n = g.n();
  int k = flip_count(n, rate);
  Graph out = g;
  std::vector<std::pair<int, int>> cand;
  cand.reserve(std::size_t(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) cand.emplace_back(u, v);
  int live = static_cast<int>(cand.size());
  for (int step = 0; step < k; ++step) {
    bool done = false;
    for (int t = 0; t < live; ++t) {
      int j = std::uniform_int_distribution<int>(t, live - 1)(rng);
      std::swap(cand[std::size_t(t)], cand[std::size_t(j)]);
      auto [u, v] = cand[std::size_t(t)];
      out.toggle_edge(u, v);
      // a 4-set holding both endpoints induces a P4 after the toggle only if
      // it did not before, so through-pair search alone certifies a new P4
      if (p4_through_pair(out, u, v)) {
        std::swap(cand[std::size_t(t)], cand[std::size_t(live - 1)]);
        --live;
        done = true;
        break;
      }
      out.toggle_edge(u, v);
    }
    if (!done) throw NoValidFlipError("no remaining pair creates a P4");
  }
  return out;
}

Instance make_instance(int n, double density, double rate, std::uint64_t seed,
                       int retry) {
  auto rng = make_rng(seed);
  for (int attempt = 0; attempt < retry; ++attempt) {
    Graph truth = random_cograph(n, density, rng);
    double dens = density_of(truth);
    if (std::fabs(dens - density) > 0.1 * density) continue;
    try {
      Graph noisy = perturb(truth, rate, rng);
      return Instance{std::move(truth), std::move(noisy), flip_count(n, rate), dens};
    } catch (const NoValidFlipError&) {
      continue;
    }
  }
  throw RetryLimitExceeded("no admissible instance within the retry budget");
}

double relative_distance(long long dist_heur_true, long long dist_noisy_true) {
  if (dist_noisy_true <= 0)
    throw std::invalid_argument("relative distance needs a positive noisy distance");
  return double(dist_heur_true) / double(dist_noisy_true);
}

bool is_fit(long long cost_heuristic, long long cost_true) {
  return cost_heuristic <= cost_true;
}

} // namespace cogedit
