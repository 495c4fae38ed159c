#pragma once
// Per-cell summaries of benchmark rows and small self-contained SVG plots.

#include <iosfwd>
#include <string>
#include <vector>

#include "cogedit/experiment.hpp"

namespace cogedit {

struct CellSummary {
  std::string cell_id;
  int n = 0;
  double density = 0.0;
  double noise = 0.0;
  std::string variant;
  int rows = 0;
  double fit_fraction = 0.0;
  // five-number summary of dist_rel
  double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;
  double mean_runtime_ms = 0.0;
};

// Linear-interpolation quantile of an ascending nonempty vector, p in [0,1].
double quantile_sorted(const std::vector<double>& sorted, double p);

// Groups rows by cell_id in first-appearance order.
std::vector<CellSummary> summarize(const std::vector<BenchRow>& rows);

void print_summary(std::ostream& out, const std::vector<CellSummary>& cells);

// Writes fit_rates.svg, dist_rel_box.svg, runtime_curves.svg into dir
// (created if missing). Writes nothing when cells is empty.
void write_report_svgs(const std::string& dir, const std::vector<CellSummary>& cells);

} // namespace cogedit
