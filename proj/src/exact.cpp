#include "cogedit/exact.hpp"

#include <bit>
#include <functional>
#include <limits>

#include "cogedit/branch_bound.hpp"
#include "cogedit/kernels.hpp"

namespace cogedit {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::editing: return "editing";
    case Variant::deletion: return "deletion";
    case Variant::completion: return "completion";
  }
  return "?";
}

std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "editing") return Variant::editing;
  if (s == "deletion") return Variant::deletion;
  if (s == "completion") return Variant::completion;
  return std::nullopt;
}

double cost_sentinel(const WeightMatrix& w) { return 1.0 + w.total(); }

std::size_t exact_table_bytes(int n) {
  if (n < 0 || n > 30) return 0;
  return (sizeof(double) + sizeof(std::uint32_t)) * (std::size_t(1) << n);
}

GrayBipartitions::GrayBipartitions(SubsetMask x) : x_(x) {
  int m = std::popcount(x);
  if (m < 2) throw std::invalid_argument("bipartitions need at least two vertices");
  int top = 31 - std::countl_zero(x);
  SubsetMask rest = x ^ (SubsetMask(1) << top);
  int k = 0;
  while (rest) {
    verts_[k++] = std::countr_zero(rest);
    rest &= rest - 1;
  }
  end_ = std::uint32_t(1) << k;
}

std::optional<GrayStep> GrayBipartitions::next() {
  if (t_ >= end_) return std::nullopt;
  int v = verts_[std::countr_zero(t_)];
  bool into = !((c_ >> v) & 1u);
  c_ ^= SubsetMask(1) << v;
  ++t_;
  return GrayStep{static_cast<SubsetMask>(x_ ^ c_), c_, v, into};
}

namespace {

constexpr std::uint32_t kSeriesBit = 0x80000000u;

struct WeightedModel {
  const Graph& g;
  const WeightMatrix& w;
  kernels::PairSums (*ps)(const double*, std::uint32_t, std::uint32_t, std::size_t);
  std::size_t chunks;
  WeightedModel(const Graph& gg, const WeightMatrix& ww)
      : g(gg), w(ww), ps(kernels::current_ops().pair_sums), chunks(ww.chunks()) {}
  void pair(int v, SubsetMask s, double& e, double& nn) const {
    auto r = ps(w.row(v), g.row32(v), s, chunks);
    e = r.edge_weight;
    nn = r.non_edge_weight;
  }
};

struct UnitModel {
  const Graph& g;
  void pair(int v, SubsetMask s, double& e, double& nn) const {
    int all = std::popcount(s);
    int ec = std::popcount(g.row32(v) & s);
    e = ec;
    nn = all - ec;
  }
};

// Walks all bipartitions of x (top vertex pinned outside c) in Gray order,
// maintaining the weighted crossing sums with one pair() call per step.
template <class Model, class Eval>
void walk_gray(const Model& model, SubsetMask x, Eval&& eval) {
  int top = 31 - std::countl_zero(x);
  SubsetMask rest = x ^ (SubsetMask(1) << top);
  int verts[32];
  double etot[32], ntot[32];
  int k = 0;
  {
    SubsetMask r = rest;
    while (r) {
      verts[k++] = std::countr_zero(r);
      r &= r - 1;
    }
  }
  for (int i = 0; i < k; ++i) {
    model.pair(verts[i], x ^ (SubsetMask(1) << verts[i]), etot[i], ntot[i]);
  }
  double par = 0.0, ser = 0.0;
  SubsetMask c = 0;
  std::uint32_t end = std::uint32_t(1) << k;
  for (std::uint32_t t = 1; t < end; ++t) {
    int j = std::countr_zero(t);
    int v = verts[j];
    SubsetMask b = SubsetMask(1) << v;
    double e, nn;
    if (!(c & b)) {
      model.pair(v, c, e, nn); // crossing sums of v against its new side
      c |= b;
      par += etot[j] - 2.0 * e;
      ser += ntot[j] - 2.0 * nn;
    } else {
      c ^= b;
      model.pair(v, c, e, nn);
      par += 2.0 * e - etot[j];
      ser += 2.0 * nn - ntot[j];
    }
    eval(c, par, ser);
  }
}

struct InnerBest {
  double cost = std::numeric_limits<double>::infinity();
  SubsetMask c = 0;
  bool series = false;
};

template <class Model>
InnerBest solve_inner_gray(const Model& model, const double* f, SubsetMask x,
                           Variant var, double sentinel) {
  InnerBest best;
  walk_gray(model, x, [&](SubsetMask c, double par, double ser) {
    double cp = par < 0.0 ? 0.0 : par; // clamp accumulated drift
    double cs = ser < 0.0 ? 0.0 : ser;
    if (var == Variant::deletion) {
      cs = cs == 0.0 ? 0.0 : sentinel;
    } else if (var == Variant::completion) {
      cp = cp == 0.0 ? 0.0 : sentinel;
    }
    double base = f[x ^ c] + f[c];
    double cand;
    bool series;
    if (cp <= cs) {
      cand = base + cp;
      series = false;
    } else {
      cand = base + cs;
      series = true;
    }
    if (cand < best.cost) best = {cand, c, series};
  });
  return best;
}

SubsetMask next_same_popcount(SubsetMask x) {
  SubsetMask lo = x & (~x + 1);
  SubsetMask lz = x + lo;
  return lz | (((x ^ lz) >> 2) >> std::countr_zero(lo));
}

struct FillResult {
  std::vector<double> f;
  std::vector<std::uint32_t> choice;
  SolveStats stats;
};

void check_order(const Graph& g, const WeightMatrix& w, const ExactOptions& opt) {
  if (g.n() != w.n()) throw std::invalid_argument("graph and weights disagree on n");
  if (g.n() > 30)
    throw SizeExceededError("exact solver is limited to 30 vertices");
  if (g.n() > opt.max_n)
    throw SizeExceededError("n=" + std::to_string(g.n()) + " exceeds max-n=" +
                            std::to_string(opt.max_n) + "; raising it needs about " +
                            std::to_string(exact_table_bytes(g.n())) +
                            " bytes of tables");
}

FillResult dp_fill(const Graph& g, const WeightMatrix& w, const ExactOptions& opt,
                   bool want_choice) {
  check_order(g, w, opt);
  int n = g.n();
  std::size_t size = std::size_t(1) << n;
  FillResult out;
  out.f.assign(size, 0.0);
  if (want_choice) out.choice.assign(size, 0);
  double sentinel = cost_sentinel(w);
  bool unit = !opt.force_weighted && w.is_unit();
  SubsetMask limit = static_cast<SubsetMask>(size);

  bb::BBOptions bopt;
  bopt.variant = opt.variant;
  bopt.enum_threshold = opt.bb_enum_threshold;

  auto run = [&](const auto& model) {
    for (int m = 4; m <= n; ++m) {
      SubsetMask x = (SubsetMask(1) << m) - 1;
      while (x < limit) {
        if (opt.inner == InnerEngine::branch_bound) {
          bb::BBStats st;
          bb::BBResult r = bb::solve_subset_bb(
              g, w, x, std::span<const double>(out.f.data(), size),
              std::numeric_limits<double>::infinity(), bopt, &st);
          out.f[x] = r.cost;
          if (want_choice)
            out.choice[x] = (x ^ r.c) | (r.kind == NodeKind::series ? kSeriesBit : 0);
          out.stats.bipartitions += st.evaluated;
          out.stats.bb_subproblems += st.subproblems;
          out.stats.bb_pruned += st.pruned;
        } else {
          InnerBest b = solve_inner_gray(model, out.f.data(), x, opt.variant, sentinel);
          out.f[x] = b.cost;
          if (want_choice) out.choice[x] = (x ^ b.c) | (b.series ? kSeriesBit : 0);
          out.stats.bipartitions += (std::uint64_t(1) << (m - 1)) - 1;
        }
        ++out.stats.subsets;
        x = next_same_popcount(x);
      }
    }
  };
  if (unit) {
    run(UnitModel{g});
  } else {
    run(WeightedModel{g, w});
  }
  return out;
}

// Cotree of at most three vertices, built by case analysis.
int small_case(Cotree& t, const Graph& g, SubsetMask mask) {
  int verts[3];
  int k = 0;
  SubsetMask m = mask;
  while (m) {
    verts[k++] = std::countr_zero(m);
    m &= m - 1;
  }
  if (k == 1) return t.add_leaf(verts[0]);
  if (k == 2) {
    int a = t.add_leaf(verts[0]);
    int b = t.add_leaf(verts[1]);
    return t.add_internal(g.adjacent(verts[0], verts[1]) ? Cotree::Label::series
                                                         : Cotree::Label::parallel,
                          {a, b});
  }
  bool ab = g.adjacent(verts[0], verts[1]);
  bool ac = g.adjacent(verts[0], verts[2]);
  bool bc = g.adjacent(verts[1], verts[2]);
  int edges = int(ab) + int(ac) + int(bc);
  int a = t.add_leaf(verts[0]);
  int b = t.add_leaf(verts[1]);
  int c = t.add_leaf(verts[2]);
  if (edges == 3) return t.add_internal(Cotree::Label::series, {a, b, c});
  if (edges == 0) return t.add_internal(Cotree::Label::parallel, {a, b, c});
  if (edges == 2) {
    // the degree-2 vertex joins the non-adjacent pair in series
    int center, u, v;
    if (!ab) { center = c; u = a; v = b; }
    else if (!ac) { center = b; u = a; v = c; }
    else { center = a; u = b; v = c; }
    int p = t.add_internal(Cotree::Label::parallel, {u, v});
    return t.add_internal(Cotree::Label::series, {center, p});
  }
  // one edge: that pair in series, the isolated vertex parallel to it
  int iso, u, v;
  if (ab) { iso = c; u = a; v = b; }
  else if (ac) { iso = b; u = a; v = c; }
  else { iso = a; u = b; v = c; }
  int s = t.add_internal(Cotree::Label::series, {u, v});
  return t.add_internal(Cotree::Label::parallel, {iso, s});
}

} // namespace

void enumerate_bipartitions_with_costs(
    const Graph& g, const WeightMatrix& w, SubsetMask x,
    const std::function<void(SubsetMask, SubsetMask, double, double)>& fn) {
  if (g.n() != w.n()) throw std::invalid_argument("graph and weights disagree on n");
  if (std::popcount(x) < 2)
    throw std::invalid_argument("bipartitions need at least two vertices");
  if (g.n() < 32 && (std::uint64_t(x) >> g.n()) != 0)
    throw std::invalid_argument("mask contains vertices outside the graph");
  WeightedModel model(g, w);
  walk_gray(model, x,
            [&](SubsetMask c, double par, double ser) { fn(x ^ c, c, par, ser); });
}

std::vector<double> subset_cost_table(const Graph& g, const WeightMatrix& w,
                                      const ExactOptions& opt) {
  return dp_fill(g, w, opt, false).f;
}

ExactResult solve_exact(const Graph& g, const ExactOptions& opt) {
  return solve_exact(g, WeightMatrix(g.n(), 1.0), opt);
}

ExactResult solve_exact(const Graph& g, const WeightMatrix& w, const ExactOptions& opt) {
  int n = g.n();
  ExactResult res;
  if (n < 4) {
    if (g.n() != w.n()) throw std::invalid_argument("graph and weights disagree on n");
    res.cotree = build_cotree(g);
    return res;
  }
  FillResult fill = dp_fill(g, w, opt, true);
  res.stats = fill.stats;
  SubsetMask full = static_cast<SubsetMask>((std::size_t(1) << n) - 1);
  res.cost = fill.f[full];

  Cotree t;
  std::function<int(SubsetMask)> build = [&](SubsetMask mask) -> int {
    if (std::popcount(mask) <= 3) return small_case(t, g, mask);
    std::uint32_t ch = fill.choice[mask];
    bool series = (ch & kSeriesBit) != 0;
    SubsetMask y = ch & ~kSeriesBit;
    SubsetMask c = mask ^ y;
    SubsetMask ym = y;
    while (ym) {
      int u = std::countr_zero(ym);
      ym &= ym - 1;
      SubsetMask cm = c;
      while (cm) {
        int v = std::countr_zero(cm);
        cm &= cm - 1;
        bool adj = g.adjacent(u, v);
        if (series ? !adj : adj) res.edits.add(u, v);
      }
    }
    int a = build(y);
    int b = build(c);
    return t.add_internal(series ? Cotree::Label::series : Cotree::Label::parallel,
                          {a, b});
  };
  t.root = build(full);
  t.canonicalize();
  res.edits.normalize();
  res.cotree = std::move(t);
  return res;
}

} // namespace cogedit
