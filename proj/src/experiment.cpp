#include "cogedit/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <future>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cogedit/rng.hpp"
#include "cogedit/simulate.hpp"

namespace cogedit {

const char kCsvHeader[] =
    "cell_id,instance_id,n,density_intended,density_actual,noise_rate,flips,"
    "variant,reps,seed,cost_heuristic,cost_true,dist_noisy_true,dist_heur_true,"
    "dist_rel,normalized_dist_heur_true,fit,runtime_ms";

std::string cell_id(int n, double density, double noise, HeurVariant v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "n%d_d%.2f_r%.2f_%s", n, density, noise,
                heur_variant_name(v));
  return buf;
}

namespace {

constexpr std::uint64_t kHeurSalt = 0x6865757269737469ull;

struct InstanceOutcome {
  std::optional<BenchRow> row;
  std::string note; // log line for dropped instances
};

InstanceOutcome eval_instance(const BenchConfig& cfg, HeurVariant variant, int n,
                              double d, double r, const std::string& cell, int inst,
                              std::uint64_t cell_seed) {
  std::uint64_t iseed = splitmix64(cell_seed + 1 + std::uint64_t(inst));
  InstanceOutcome out;
  Instance ins;
  try {
    ins = make_instance(n, d, r, iseed, cfg.retry);
  } catch (const RetryLimitExceeded&) {
    out.note = "drop " + cell + " instance " + std::to_string(inst) +
               ": retry budget exhausted";
    return out;
  }

  HeurConfig hc;
  hc.variant = variant;
  hc.reps = cfg.reps > 0 ? cfg.reps : default_reps(variant);
  hc.seed = splitmix64(iseed ^ kHeurSalt);
  auto t0 = std::chrono::steady_clock::now();
  HeurResult res = run_heuristic(ins.noisy, hc);
  auto t1 = std::chrono::steady_clock::now();

  BenchRow row;
  row.cell_id = cell;
  row.instance_id = inst;
  row.n = n;
  row.density_intended = d;
  row.density_actual = ins.density_actual;
  row.noise_rate = r;
  row.flips = ins.flips;
  row.variant = heur_variant_name(variant);
  row.reps = hc.reps;
  row.seed = iseed;
  row.cost_heuristic = res.cost;
  row.cost_true = ins.flips;
  row.dist_noisy_true = distance(ins.noisy, ins.truth);
  row.dist_heur_true = distance(res.graph, ins.truth);
  row.dist_rel = relative_distance(row.dist_heur_true, row.dist_noisy_true);
  row.normalized_dist_heur_true = normalized_distance(res.graph, ins.truth);
  row.fit = is_fit(row.cost_heuristic, row.cost_true);
  row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  out.row = std::move(row);
  return out;
}

} // namespace

std::vector<BenchRow> run_experiment(const BenchConfig& cfg, std::ostream* log) {
  if (cfg.instances < 0 || cfg.jobs < 1)
    throw std::invalid_argument("instances must be >= 0 and jobs >= 1");
  std::vector<BenchRow> rows;
  for (HeurVariant variant : cfg.variants) {
    for (int n : cfg.ns) {
      for (double d : cfg.densities) {
        for (double r : cfg.noises) {
          std::string cell = cell_id(n, d, r, variant);
          if (flip_count(n, r) == 0) {
            if (log) *log << "skip " << cell << ": flip count rounds to zero\n";
            continue;
          }
          std::uint64_t cell_seed = splitmix64(cfg.seed ^ fnv1a64(cell));
          std::vector<InstanceOutcome> outs(std::size_t(cfg.instances));
          if (cfg.jobs <= 1) {
            for (int i = 0; i < cfg.instances; ++i)
              outs[std::size_t(i)] =
                  eval_instance(cfg, variant, n, d, r, cell, i, cell_seed);
          } else {
            for (int base = 0; base < cfg.instances; base += cfg.jobs) {
              int hi = std::min(base + cfg.jobs, cfg.instances);
              std::vector<std::future<InstanceOutcome>> fs;
              fs.reserve(std::size_t(hi - base));
              for (int i = base; i < hi; ++i)
                fs.push_back(std::async(std::launch::async, eval_instance,
                                        std::cref(cfg), variant, n, d, r,
                                        std::cref(cell), i, cell_seed));
              for (int i = base; i < hi; ++i)
                outs[std::size_t(i)] = fs[std::size_t(i - base)].get();
            }
          }
          for (auto& o : outs) {
            if (o.row) rows.push_back(std::move(*o.row));
            if (log && !o.note.empty()) *log << o.note << "\n";
          }
        }
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kCsvHeader << "\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%s,%d,%d,%.2f,%.6f,%.2f,%d,%s,%d,%llu,%lld,%lld,%lld,%lld,"
                  "%.6f,%.6f,%d,%.3f",
                  r.cell_id.c_str(), r.instance_id, r.n, r.density_intended,
                  r.density_actual, r.noise_rate, r.flips, r.variant.c_str(),
                  r.reps, static_cast<unsigned long long>(r.seed),
                  r.cost_heuristic, r.cost_true, r.dist_noisy_true,
                  r.dist_heur_true, r.dist_rel, r.normalized_dist_heur_true,
                  r.fit ? 1 : 0, r.runtime_ms);
    out << buf << "\n";
  }
}

std::vector<BenchRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: header missing");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);
  std::vector<BenchRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      std::size_t c = line.find(',', pos);
      if (c == std::string::npos) {
        f.push_back(line.substr(pos));
        break;
      }
      f.push_back(line.substr(pos, c - pos));
      pos = c + 1;
    }
    if (f.size() != 18)
      throw std::runtime_error("CSV line " + std::to_string(lineno) +
                               ": expected 18 fields, got " + std::to_string(f.size()));
    try {
      BenchRow r;
      r.cell_id = f[0];
      r.instance_id = std::stoi(f[1]);
      r.n = std::stoi(f[2]);
      r.density_intended = std::stod(f[3]);
      r.density_actual = std::stod(f[4]);
      r.noise_rate = std::stod(f[5]);
      r.flips = std::stoi(f[6]);
      r.variant = f[7];
      r.reps = std::stoi(f[8]);
      r.seed = std::stoull(f[9]);
      r.cost_heuristic = std::stoll(f[10]);
      r.cost_true = std::stoll(f[11]);
      r.dist_noisy_true = std::stoll(f[12]);
      r.dist_heur_true = std::stoll(f[13]);
      r.dist_rel = std::stod(f[14]);
      r.normalized_dist_heur_true = std::stod(f[15]);
      r.fit = std::stoi(f[16]) != 0;
      r.runtime_ms = std::stod(f[17]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error("CSV line " + std::to_string(lineno) +
                               ": malformed numeric field");
    }
  }
  return rows;
}

} // namespace cogedit
