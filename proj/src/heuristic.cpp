#include "cogedit/heuristic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cogedit/rng.hpp"

namespace cogedit {

const char* heur_variant_name(HeurVariant v) {
  switch (v) {
    case HeurVariant::standard: return "standard";
    case HeurVariant::modify: return "modify";
    case HeurVariant::choose_multiple: return "choose-multiple";
    case HeurVariant::beam_search: return "beam-search";
    case HeurVariant::choose_all: return "choose-all";
  }
  return "?";
}

HeurVariant parse_heur_variant(const std::string& name) {
  for (auto v : {HeurVariant::standard, HeurVariant::modify,
                 HeurVariant::choose_multiple, HeurVariant::beam_search,
                 HeurVariant::choose_all})
    if (name == heur_variant_name(v)) return v;
  throw std::invalid_argument("unknown heuristic variant: " + name);
}

int default_reps(HeurVariant v) {
  switch (v) {
    case HeurVariant::beam_search: return 10;
    case HeurVariant::choose_all: return 1;
    default: return 100;
  }
}

HeuristicState::HeuristicState(const Graph& input)
    : input_(&input),
      t_(input.n()),
      tc_(input.n()),
      realized_(input.n()),
      inserted_(input.n()) {}

HeuristicState::Plan HeuristicState::plan_step(int v, bool modify) {
  Bits nb(input_->n());
  nb.copy_from(input_->row(v));
  nb &= inserted_;
  Bits nbc = inserted_;
  nbc.and_not(nb);

  // Each side completes its own view: the direct tree may only add edges
  // beyond nb (lower bound nb), the complement tree only complement-edges
  // beyond nbc, which are deletions of the original pairs. |M delta nb| on
  // one side equals |Mc delta nbc| on the other, so fill costs compare
  // directly. The modify relaxation drops one incident pair from the lower
  // bound; the fill cost still charges it when the pair stays out.
  Plan best;
  bool have = false;
  auto consider = [&](bool on_comp, const Bits& lower, const Bits& target) {
    DynCotree& tree = on_comp ? tc_ : t_;
    DynCotree::Fill f = tree.best_fill(lower, target);
    if (have && f.cost >= best.cost) return;
    Bits m = f.m;
    if (on_comp) {
      Bits t = inserted_;
      t.and_not(f.m);
      m = t;
    }
    best = Plan{f.cost, on_comp, std::move(f), std::move(m)};
    have = true;
  };

  consider(false, nb, nb);
  consider(true, nbc, nbc);
  if (modify) {
    nb.for_each([&](int u) {
      Bits lo = nb;
      lo.reset(u);
      consider(false, lo, nb);
    });
    nbc.for_each([&](int u) {
      Bits lo = nbc;
      lo.reset(u);
      consider(true, lo, nbc);
    });
  }
  return best;
}

void HeuristicState::apply(int v, const Plan& p) {
  Bits mc = inserted_;
  mc.and_not(p.m);
  if (p.on_complement) {
    tc_.attach(v, p.fill);
    t_.attach_exact(v, p.m);
  } else {
    t_.attach(v, p.fill);
    tc_.attach_exact(v, mc);
  }
  p.m.for_each([&](int u) { realized_.set_edge(v, u, true); });
  inserted_.set(v);
  cost_ += p.cost;
}

namespace {

// first k entries of pool become a uniform sample without replacement
void partial_shuffle(std::vector<int>& pool, int k, std::mt19937_64& rng) {
  int sz = static_cast<int>(pool.size());
  for (int i = 0; i < k && i < sz - 1; ++i) {
    std::uniform_int_distribution<int> d(i, sz - 1);
    std::swap(pool[i], pool[std::size_t(d(rng))]);
  }
}

HeuristicState run_ordered(const Graph& g, bool modify, std::mt19937_64& rng) {
  std::vector<int> perm(g.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  HeuristicState s(g);
  for (int v : perm) s.step(v, modify);
  return s;
}

HeuristicState run_cheapest_next(const Graph& g, int sample, std::mt19937_64& rng) {
  HeuristicState s(g);
  std::vector<int> remaining(g.n());
  std::iota(remaining.begin(), remaining.end(), 0);
  while (!remaining.empty()) {
    int k = remaining.size() > std::size_t(sample) && sample > 0
                ? sample
                : static_cast<int>(remaining.size());
    if (sample > 0) partial_shuffle(remaining, k, rng);
    int bv = -1;
    HeuristicState::Plan bp;
    for (int i = 0; i < k; ++i) {
      int v = remaining[std::size_t(i)];
      auto p = s.plan_step(v, false);
      if (bv < 0 || p.cost < bp.cost || (p.cost == bp.cost && v < bv)) {
        bv = v;
        bp = std::move(p);
      }
    }
    s.apply(bv, bp);
    remaining.erase(std::find(remaining.begin(), remaining.end(), bv));
  }
  return s;
}

HeuristicState run_beam(const Graph& g, int tries, int width, std::mt19937_64& rng) {
  int n = g.n();
  std::vector<HeuristicState> beams;
  beams.emplace_back(g);
  std::vector<int> pool;
  for (int step = 0; step < n; ++step) {
    std::vector<HeuristicState> next;
    for (auto& b : beams) {
      pool.clear();
      for (int v = 0; v < n; ++v)
        if (!b.inserted().test(v)) pool.push_back(v);
      int k = std::min<int>(tries, static_cast<int>(pool.size()));
      partial_shuffle(pool, k, rng);
      for (int i = 0; i < k; ++i) {
        HeuristicState child = b;
        child.step(pool[std::size_t(i)], false);
        next.push_back(std::move(child));
      }
    }
    std::stable_sort(next.begin(), next.end(),
                     [](const HeuristicState& a, const HeuristicState& b) {
                       return a.cost() < b.cost();
                     });
    beams.clear();
    for (auto& c : next) {
      bool dup = false;
      for (const auto& kept : beams)
        if (kept == c) {
          dup = true;
          break;
        }
      if (!dup) {
        beams.push_back(std::move(c));
        if (static_cast<int>(beams.size()) >= width) break;
      }
    }
  }
  return std::move(beams.front());
}

} // namespace

HeurResult run_heuristic(const Graph& g, const HeurConfig& cfg) {
  if (cfg.candidates < 1 || cfg.beam_width < 1)
    throw std::invalid_argument("candidate count and beam width must be positive");
  int reps = cfg.reps > 0 ? cfg.reps : default_reps(cfg.variant);

  HeuristicState best(g);
  bool have = false;
  for (int rep = 0; rep < reps; ++rep) {
    auto rng = make_rng(cfg.seed ^ splitmix64(std::uint64_t(rep) + 1));
    HeuristicState s(g);
    switch (cfg.variant) {
      case HeurVariant::standard: s = run_ordered(g, false, rng); break;
      case HeurVariant::modify: s = run_ordered(g, true, rng); break;
      case HeurVariant::choose_multiple:
        s = run_cheapest_next(g, cfg.candidates, rng);
        break;
      case HeurVariant::beam_search:
        s = run_beam(g, cfg.candidates, cfg.beam_width, rng);
        break;
      case HeurVariant::choose_all: s = run_cheapest_next(g, 0, rng); break;
    }
    if (!have || s.cost() < best.cost()) {
      best = std::move(s);
      have = true;
    }
  }

  HeurResult out;
  out.graph = best.realized();
  out.cost = best.cost();
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (g.adjacent(u, v) != out.graph.adjacent(u, v)) out.edits.add(u, v);
  out.edits.normalize();
  out.cotree = best.cotree();
  return out;
}

} // namespace cogedit
