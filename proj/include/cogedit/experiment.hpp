#pragma once
// Recovery benchmark: simulate noisy cograph instances over a parameter grid,
// run a heuristic on each, and collect per-instance metric rows. Fixed seed
// and fixed grid give byte-identical rows apart from runtime_ms.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cogedit/heuristic.hpp"

namespace cogedit {

struct BenchRow {
  std::string cell_id;
  int instance_id = 0;
  int n = 0;
  double density_intended = 0.0;
  double density_actual = 0.0;
  double noise_rate = 0.0;
  int flips = 0;
  std::string variant;
  int reps = 0;
  std::uint64_t seed = 0; // per-instance seed; reproduces the instance alone
  long long cost_heuristic = 0;
  long long cost_true = 0;
  long long dist_noisy_true = 0;
  long long dist_heur_true = 0;
  double dist_rel = 0.0;
  double normalized_dist_heur_true = 0.0;
  bool fit = false;
  double runtime_ms = 0.0; // heuristic wall time only
};

struct BenchConfig {
  std::vector<int> ns{10, 20, 50, 100};
  std::vector<double> densities{0.1, 0.2, 0.5};
  std::vector<double> noises{0.01, 0.05, 0.10};
  std::vector<HeurVariant> variants{HeurVariant::modify};
  int instances = 100;
  int reps = 0; // 0: default_reps per variant
  std::uint64_t seed = 1;
  int jobs = 1;
  int retry = 1000;
};

// "n20_d0.20_r0.05_modify"
std::string cell_id(int n, double density, double noise, HeurVariant v);

extern const char kCsvHeader[];

// Cells whose flip count rounds to zero are skipped; instances that exhaust
// the retry budget are dropped. Notices for both go to log when given. Row
// order is fixed by the grid regardless of jobs.
std::vector<BenchRow> run_experiment(const BenchConfig& cfg, std::ostream* log = nullptr);

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
// Throws std::runtime_error on a header or field mismatch.
std::vector<BenchRow> read_csv(std::istream& in);

} // namespace cogedit
