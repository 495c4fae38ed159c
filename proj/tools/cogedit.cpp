// Command-line front end. Machine-readable results go to standard output,
// notes and statistics to standard error. Exit codes: 0 success, 1 domain
// failures (instance too large, retry budget exhausted), 2 usage errors.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cogedit/exact.hpp"
#include "cogedit/experiment.hpp"
#include "cogedit/heuristic.hpp"
#include "cogedit/report.hpp"
#include "cogedit/rng.hpp"
#include "cogedit/simulate.hpp"

namespace {

using namespace cogedit;

std::string fmt_cost(double c) {
  char buf[40];
  if (c == std::floor(c) && std::fabs(c) < 9e15)
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(c));
  else
    std::snprintf(buf, sizeof buf, "%.6g", c);
  return buf;
}

void print_solution(double cost, const EditSet& edits, const Cotree& t) {
  std::cout << "cost " << fmt_cost(cost) << "\n";
  for (auto [u, v] : edits.pairs) std::cout << "edit " << u << " " << v << "\n";
  std::cout << "cotree " << t.to_term() << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"cograph editing: exact subset solver, insertion heuristics, benchmarks"};
  app.require_subcommand(1);

  struct {
    std::string graph = "-", variant = "editing", inner = "gray", weights;
    int max_n = 26;
  } ex;
  auto* se = app.add_subcommand("solve-exact", "optimal edit set to a cograph");
  se->add_option("graph", ex.graph, "graph file, - for stdin");
  se->add_option("--variant", ex.variant, "editing, deletion, or completion")
      ->check(CLI::IsMember({"editing", "deletion", "completion"}));
  se->add_option("--inner", ex.inner, "bipartition engine: gray or bb")
      ->check(CLI::IsMember({"gray", "bb"}));
  auto* se_max = se->add_option("--max-n", ex.max_n, "largest accepted vertex count");
  se->add_option("--weights", ex.weights, "pair weight file (u v w lines)");
  se->callback([&] {
    Graph g = load_graph(ex.graph);
    ExactOptions opt;
    opt.variant = *parse_variant(ex.variant);
    opt.inner = ex.inner == "bb" ? InnerEngine::branch_bound : InnerEngine::gray;
    opt.max_n = ex.max_n;
    if (se_max->count())
      std::fprintf(stderr, "note: order %d tables take %.1f MiB\n", ex.max_n,
                   double(exact_table_bytes(ex.max_n)) / (1024.0 * 1024.0));
    ExactResult r = ex.weights.empty()
                        ? solve_exact(g, opt)
                        : solve_exact(g, load_weights(ex.weights, g.n()), opt);
    print_solution(r.cost, r.edits, r.cotree);
    std::fprintf(stderr, "stat subsets %llu\nstat bipartitions %llu\n",
                 static_cast<unsigned long long>(r.stats.subsets),
                 static_cast<unsigned long long>(r.stats.bipartitions));
    if (opt.inner == InnerEngine::branch_bound)
      std::fprintf(stderr, "stat bb_subproblems %llu\nstat bb_pruned %llu\n",
                   static_cast<unsigned long long>(r.stats.bb_subproblems),
                   static_cast<unsigned long long>(r.stats.bb_pruned));
  });

  struct {
    std::string graph = "-", variant = "standard";
    int reps = 0, candidates = 10, beam_width = 10;
    std::uint64_t seed = 1;
  } he;
  auto* sh = app.add_subcommand("solve-heuristic", "incremental insertion heuristic");
  sh->add_option("graph", he.graph, "graph file, - for stdin");
  sh->add_option("--variant", he.variant, "heuristic flavor")
      ->check(CLI::IsMember({"standard", "modify", "choose-multiple", "beam-search",
                             "choose-all"}));
  sh->add_option("--reps", he.reps, "repetitions (0: per-variant default)");
  sh->add_option("--seed", he.seed, "random seed");
  sh->add_option("--candidates", he.candidates, "sampled vertices per step");
  sh->add_option("--beam-width", he.beam_width, "partial solutions kept");
  sh->callback([&] {
    Graph g = load_graph(he.graph);
    HeurConfig hc;
    hc.variant = parse_heur_variant(he.variant);
    hc.reps = he.reps;
    hc.candidates = he.candidates;
    hc.beam_width = he.beam_width;
    hc.seed = he.seed;
    HeurResult r = run_heuristic(g, hc);
    print_solution(double(r.cost), r.edits, r.cotree);
  });

  std::string rec_graph = "-";
  auto* sr = app.add_subcommand("recognize", "cotree or induced-P4 witness");
  sr->add_option("graph", rec_graph, "graph file, - for stdin");
  sr->callback([&] {
    Graph g = load_graph(rec_graph);
    try {
      Cotree t = build_cotree(g);
      std::cout << "cograph\n" << t.to_term() << "\n";
    } catch (const NotCographError& e) {
      std::cout << "not-cograph\n"
                << "p4 " << e.witness[0] << " " << e.witness[1] << " "
                << e.witness[2] << " " << e.witness[3] << "\n";
    }
  });

  struct {
    int n = 20, retry = 1000;
    double density = 0.5;
    std::uint64_t seed = 1;
  } si;
  auto* ss = app.add_subcommand("simulate", "random cograph within the density window");
  ss->add_option("--n", si.n, "vertex count")->required();
  ss->add_option("--density", si.density, "intended edge density in (0,1)")->required();
  ss->add_option("--seed", si.seed, "random seed");
  ss->add_option("--retry", si.retry, "density window retry budget");
  ss->callback([&] {
    auto rng = make_rng(si.seed);
    save_graph("-", simulate_cograph(si.n, si.density, rng, si.retry));
  });

  struct {
    std::string graph = "-";
    double noise = 0.05;
    std::uint64_t seed = 1;
  } pe;
  auto* sp = app.add_subcommand("perturb", "toggle P4-introducing pairs at a noise rate");
  sp->add_option("graph", pe.graph, "graph file, - for stdin");
  sp->add_option("--noise", pe.noise, "flip rate in [0,1)")->required();
  sp->add_option("--seed", pe.seed, "random seed");
  sp->callback([&] {
    Graph g = load_graph(pe.graph);
    auto rng = make_rng(pe.seed);
    save_graph("-", perturb(g, pe.noise, rng));
  });

  struct {
    std::string grid = "default", out;
    std::vector<int> ns;
    std::vector<double> densities, noises;
    std::vector<std::string> variants;
    int instances = 100, reps = 0, jobs = 1;
    std::uint64_t seed = 1;
  } be;
  auto* sb = app.add_subcommand("bench", "simulate/perturb/solve over a parameter grid");
  sb->add_option("--grid", be.grid, "default grid or custom axes")
      ->check(CLI::IsMember({"default", "custom"}));
  auto* bn = sb->add_option("--n", be.ns, "vertex counts (custom grid)");
  auto* bd = sb->add_option("--density", be.densities, "densities (custom grid)");
  auto* br = sb->add_option("--noise", be.noises, "noise rates (custom grid)");
  auto* bv = sb->add_option("--variant", be.variants, "heuristic flavors (custom grid)");
  sb->add_option("--instances", be.instances, "instances per cell");
  sb->add_option("--reps", be.reps, "heuristic repetitions (0: per-variant default)");
  sb->add_option("--seed", be.seed, "master seed");
  sb->add_option("--jobs", be.jobs, "concurrent instances");
  sb->add_option("--out", be.out, "CSV path (default: stdout)");
  sb->callback([&] {
    BenchConfig bc;
    bc.instances = be.instances;
    bc.reps = be.reps;
    bc.seed = be.seed;
    bc.jobs = be.jobs;
    bool axes = bn->count() || bd->count() || br->count() || bv->count();
    if (be.grid == "custom") {
      if (be.ns.empty() || be.densities.empty() || be.noises.empty() ||
          be.variants.empty())
        throw std::invalid_argument(
            "custom grid needs --n, --density, --noise, and --variant");
      bc.ns = be.ns;
      bc.densities = be.densities;
      bc.noises = be.noises;
      bc.variants.clear();
      for (const auto& v : be.variants) bc.variants.push_back(parse_heur_variant(v));
    } else if (axes) {
      throw std::invalid_argument("grid axes are fixed unless --grid custom is given");
    }
    auto rows = run_experiment(bc, &std::cerr);
    if (be.out.empty()) {
      write_csv(std::cout, rows);
    } else {
      std::ofstream f(be.out);
      if (!f) throw std::runtime_error("cannot write " + be.out);
      write_csv(f, rows);
    }
  });

  struct {
    std::string csv, out_dir = ".";
  } re;
  auto* sre = app.add_subcommand("report", "summary table and SVG plots from a bench CSV");
  sre->add_option("csv", re.csv, "bench CSV file")->required();
  sre->add_option("--out-dir", re.out_dir, "directory for the SVG files");
  sre->callback([&] {
    std::ifstream in(re.csv);
    if (!in) throw std::runtime_error("cannot open " + re.csv);
    auto cells = summarize(read_csv(in));
    print_summary(std::cout, cells);
    write_report_svgs(re.out_dir, cells);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
