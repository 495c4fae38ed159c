#pragma once
// Random cograph generation, P4-introducing noise, and the recovery metrics
// used by the benchmark harness.

#include <cstdint>
#include <random>
#include <stdexcept>

#include "cogedit/graph.hpp"

namespace cogedit {

struct RetryLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised by perturb when some step has no pair left whose toggle creates an
// induced P4 through it; callers discard the instance and re-simulate.
struct NoValidFlipError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One bottom-up draw: n singleton bins, repeatedly merge two uniformly chosen
// distinct bins, connecting all cross pairs with probability density.
Graph random_cograph(int n, double density, std::mt19937_64& rng);

// edge count / C(n,2); 0 when n < 2
double density_of(const Graph& g);

// Redraws random_cograph until |density_of - density| <= 0.1 * density,
// at most retry times; throws RetryLimitExceeded.
Graph simulate_cograph(int n, double density, std::mt19937_64& rng, int retry = 1000);

// round(rate * C(n,2))
int flip_count(int n, double rate);

// Toggles flip_count(n, rate) distinct pairs, each drawn uniformly without
// replacement per step among never-flipped pairs until one creates an induced
// P4 through the toggled pair. The result differs from g in exactly the
// flipped pairs.
Graph perturb(const Graph& g, double rate, std::mt19937_64& rng);

struct Instance {
  Graph truth;
  Graph noisy;
  int flips = 0;
  double density_actual = 0.0;
};

// simulate + perturb with a shared retry budget; instances whose draw falls
// outside the density window or admits no valid flip are discarded.
Instance make_instance(int n, double density, double rate, std::uint64_t seed,
                       int retry = 1000);

// dist(true, heuristic) / dist(true, noisy); the denominator must be positive
double relative_distance(long long dist_heur_true, long long dist_noisy_true);

// cheaper-or-equal to the true cograph against the noisy input
bool is_fit(long long cost_heuristic, long long cost_true);

} // namespace cogedit
