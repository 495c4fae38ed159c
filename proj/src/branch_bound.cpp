#include "cogedit/branch_bound.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "cogedit/kernels.hpp"

namespace cogedit::bb {

std::vector<int> Subproblem::active_roots() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(parent.size()); ++i)
    if (parent[i] == i && !frozen[i]) out.push_back(i);
  return out;
}

BBContext make_context(const Graph& g, const WeightMatrix& w, SubsetMask x,
                       std::span<const double> f, Variant variant) {
  if (g.n() != w.n()) throw std::invalid_argument("graph and weights disagree on n");
  if (g.n() < 32 && (std::uint64_t(x) >> g.n()) != 0)
    throw std::invalid_argument("mask contains vertices outside the graph");
  BBContext c;
  c.g = &g;
  c.w = &w;
  c.f = f;
  c.x = x;
  c.variant = variant;
  c.sentinel = cost_sentinel(w);
  c.m = std::popcount(x);
  c.vx = 31 - std::countl_zero(x);
  for (int i = 0; i < 32; ++i) {
    c.slot_of[i] = -1;
    c.vert_of[i] = -1;
    c.cpos[i] = -1;
  }
  int slot = 0, cp = 0;
  SubsetMask rest = x;
  while (rest) {
    int v = std::countr_zero(rest);
    rest &= rest - 1;
    c.slot_of[v] = static_cast<std::int8_t>(slot);
    c.vert_of[slot] = static_cast<std::int8_t>(v);
    if (v != c.vx) c.cpos[v] = static_cast<std::int8_t>(cp++);
    ++slot;
  }
  c.vx_slot = c.slot_of[c.vx];
  return c;
}

std::pair<Subproblem, Subproblem> root_subproblems(const BBContext& ctx) {
  int m = ctx.m;
  Subproblem base;
  base.parent.resize(m);
  base.mask.resize(m);
  base.frozen.assign(m, 0);
  base.ew.assign(std::size_t(m) * m, 0.0);
  base.nw.assign(std::size_t(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    base.parent[i] = static_cast<std::int8_t>(i);
    base.mask[i] = SubsetMask(1) << ctx.vert_of[i];
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      int u = ctx.vert_of[i], v = ctx.vert_of[j];
      double wt = ctx.w->at(u, v);
      auto& tab = ctx.g->adjacent(u, v) ? base.ew : base.nw;
      tab[std::size_t(i) * m + j] = wt;
      tab[std::size_t(j) * m + i] = wt;
    }
  }
  Subproblem par = base;
  par.kind = NodeKind::parallel;
  Subproblem ser = std::move(base);
  ser.kind = NodeKind::series;
  return {std::move(par), std::move(ser)};
}

double lb_increment_same(std::span<const double> f, SubsetMask a, SubsetMask b) {
  return f[a | b] - f[a] - f[b];
}

double lb_increment_opp(const BBContext& ctx, const Subproblem& p, int ra, int rb) {
  int m = ctx.m;
  double raw = p.kind == NodeKind::parallel ? p.ew[std::size_t(ra) * m + rb]
                                            : p.nw[std::size_t(ra) * m + rb];
  bool banned = (ctx.variant == Variant::deletion && p.kind == NodeKind::series) ||
                (ctx.variant == Variant::completion && p.kind == NodeKind::parallel);
  if (banned && raw > 0.0) return ctx.sentinel;
  return raw;
}

std::pair<int, int> select_pair(const BBContext& ctx, const Subproblem& p) {
  std::vector<int> roots = p.active_roots();
  if (roots.size() < 2) throw std::logic_error("select_pair needs two active groups");
  int ba = -1, bb2 = -1;
  double blo = -1.0, bhi = -1.0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      int ra = roots[i], rb = roots[j];
      SubsetMask mu = p.mask[ra] | p.mask[rb];
      double s = mu == ctx.x ? ctx.sentinel
                             : lb_increment_same(ctx.f, p.mask[ra], p.mask[rb]);
      double o = lb_increment_opp(ctx, p, ra, rb);
      double lo = std::min(s, o), hi = std::max(s, o);
      if (ba < 0 || lo > blo || (lo == blo && hi > bhi)) {
        ba = ra;
        bb2 = rb;
        blo = lo;
        bhi = hi;
      }
    }
  }
  return {ba, bb2};
}

std::pair<Subproblem, Subproblem> branch(const BBContext& ctx, const Subproblem& p,
                                         int ra, int rb) {
  if (ra > rb) std::swap(ra, rb);
  int m = ctx.m;

  Subproblem same = p;
  SubsetMask ma = p.mask[ra], mb = p.mask[rb];
  same.parent[rb] = static_cast<std::int8_t>(ra);
  same.mask[ra] = ma | mb;
  for (int r = 0; r < m; ++r) {
    if (r == ra || r == rb) continue;
    same.ew[std::size_t(ra) * m + r] += same.ew[std::size_t(rb) * m + r];
    same.ew[std::size_t(r) * m + ra] = same.ew[std::size_t(ra) * m + r];
    same.nw[std::size_t(ra) * m + r] += same.nw[std::size_t(rb) * m + r];
    same.nw[std::size_t(r) * m + ra] = same.nw[std::size_t(ra) * m + r];
  }
  if (same.mask[ra] == ctx.x) {
    same.lb = ctx.sentinel; // merged away every bipartition
  } else {
    same.lb = sat_add(p.lb, lb_increment_same(ctx.f, ma, mb), ctx.sentinel);
  }

  Subproblem opp = p;
  opp.frozen[ra] = 1;
  opp.frozen[rb] = 1;
  opp.opp.emplace_back(static_cast<std::int8_t>(ra), static_cast<std::int8_t>(rb));
  opp.lb = sat_add(p.lb, lb_increment_opp(ctx, p, ra, rb), ctx.sentinel);

  return {std::move(same), std::move(opp)};
}

void for_each_consistent(const BBContext& ctx, const Subproblem& p,
                         const std::function<void(SubsetMask)>& fn) {
  int rstar = p.find(ctx.vx_slot);
  SubsetMask fixed_c = 0;
  std::vector<SubsetMask> opt0, opt1; // per free choice: contribution when bit 0 / 1
  for (int r : p.active_roots()) {
    if (r == rstar) continue; // pinned to the top-vertex side
    opt0.push_back(0);
    opt1.push_back(p.mask[r]);
  }
  for (auto [a, b] : p.opp) {
    if (a == rstar) {
      fixed_c |= p.mask[b];
    } else if (b == rstar) {
      fixed_c |= p.mask[a];
    } else {
      opt0.push_back(p.mask[a]);
      opt1.push_back(p.mask[b]);
    }
  }
  int k = static_cast<int>(opt0.size());
  std::uint64_t end = std::uint64_t(1) << k;
  for (std::uint64_t assign = 0; assign < end; ++assign) {
    SubsetMask c = fixed_c;
    for (int i = 0; i < k; ++i) c |= (assign >> i) & 1 ? opt1[i] : opt0[i];
    if (c == 0) continue; // everything on the pinned side: not a bipartition
    fn(c);
  }
}

namespace {

struct SeenSet {
  std::vector<bool> bits;
  std::unordered_set<std::uint32_t> set;
  bool use_bits = true;

  explicit SeenSet(int kbits) {
    if (kbits <= 22) {
      bits.assign(std::size_t(1) << kbits, false);
    } else {
      use_bits = false;
    }
  }
  bool test_and_set(std::uint32_t key) {
    if (use_bits) {
      if (bits[key]) return true;
      bits[key] = true;
      return false;
    }
    return !set.insert(key).second;
  }
};

struct QEntry {
  double lb = 0.0;
  std::uint64_t seq = 0;
  Subproblem p;
};

bool q_after(const QEntry& a, const QEntry& b) {
  if (a.lb != b.lb) return a.lb > b.lb;
  return a.seq > b.seq;
}

} // namespace

BBResult solve_subset_bb(const Graph& g, const WeightMatrix& w, SubsetMask x,
                         std::span<const double> f, double upper,
                         const BBOptions& opt, BBStats* stats) {
  BBContext ctx = make_context(g, w, x, f, opt.variant);
  if (ctx.m < 2)
    throw std::invalid_argument("bipartitions need at least two vertices");
  BBStats local;
  BBStats& st = stats ? *stats : local;

  auto ps = kernels::current_ops().pair_sums;
  std::size_t chunks = w.chunks();
  BBResult best;
  best.cost = std::numeric_limits<double>::infinity();
  bool have = false;

  auto eval = [&](SubsetMask c) {
    ++st.evaluated;
    SubsetMask y = x ^ c;
    double par = 0.0, ser = 0.0;
    SubsetMask cm = c;
    while (cm) {
      int v = std::countr_zero(cm);
      cm &= cm - 1;
      auto r = ps(w.row(v), g.row32(v), y, chunks);
      par += r.edge_weight;
      ser += r.non_edge_weight;
    }
    double cp = par, cs = ser;
    if (ctx.variant == Variant::deletion) {
      cs = cs == 0.0 ? 0.0 : ctx.sentinel;
    } else if (ctx.variant == Variant::completion) {
      cp = cp == 0.0 ? 0.0 : ctx.sentinel;
    }
    double base = f[y] + f[c];
    if (!have || base + cp < best.cost) {
      best = {base + cp, c, NodeKind::parallel};
      have = true;
    }
    if (base + cs < best.cost) best = {base + cs, c, NodeKind::series};
  };

  // movable vertices, for key compression and small-m enumeration
  int verts[32];
  int k = 0;
  {
    SubsetMask rest = x ^ (SubsetMask(1) << ctx.vx);
    while (rest) {
      verts[k++] = std::countr_zero(rest);
      rest &= rest - 1;
    }
  }

  if (ctx.m <= opt.enum_threshold) {
    std::uint32_t end = std::uint32_t(1) << k;
    for (std::uint32_t t = 1; t < end; ++t) {
      SubsetMask c = 0;
      std::uint32_t tt = t;
      while (tt) {
        int i = std::countr_zero(tt);
        tt &= tt - 1;
        c |= SubsetMask(1) << verts[i];
      }
      eval(c);
    }
    return best;
  }

  SeenSet seen(k);
  auto key_of = [&](SubsetMask c) {
    std::uint32_t key = 0;
    SubsetMask t = c;
    while (t) {
      int v = std::countr_zero(t);
      t &= t - 1;
      key |= std::uint32_t(1) << ctx.cpos[v];
    }
    return key;
  };

  // incumbent seed: split at the highest-degree vertex's neighborhood
  {
    int bu = -1, bd = -1;
    SubsetMask rest = x;
    while (rest) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      int d = std::popcount(g.row32(v) & x);
      if (d > bd) {
        bd = d;
        bu = v;
      }
    }
    SubsetMask a = g.row32(bu) & x;
    SubsetMask c0 = (a >> ctx.vx) & 1u ? (x & ~a) : a;
    if (c0 == 0) c0 = x ^ (SubsetMask(1) << ctx.vx);
    seen.test_and_set(key_of(c0));
    eval(c0);
  }

  std::vector<QEntry> heap;
  std::uint64_t seq = 0;
  auto push = [&](Subproblem&& p) {
    if (p.lb >= best.cost || p.lb > upper) {
      ++st.pruned;
      return;
    }
    heap.push_back(QEntry{p.lb, seq++, std::move(p)});
    std::push_heap(heap.begin(), heap.end(), q_after);
  };

  {
    auto [pr, sr] = root_subproblems(ctx);
    pr.kind = NodeKind::parallel;
    sr.kind = NodeKind::series;
    push(std::move(pr));
    push(std::move(sr));
  }

  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), q_after);
    QEntry e = std::move(heap.back());
    heap.pop_back();
    if (e.lb >= best.cost || e.lb > upper) {
      st.pruned += 1 + heap.size(); // best-first: the rest bound at least as high
      break;
    }
    ++st.subproblems;
    Subproblem& p = e.p;
    std::vector<int> actives = p.active_roots();
    if (static_cast<int>(actives.size()) <= opt.enum_threshold) {
      for_each_consistent(ctx, p, [&](SubsetMask c) {
        if (seen.test_and_set(key_of(c))) return;
        eval(c);
      });
      continue;
    }
    auto [ra, rb] = select_pair(ctx, p);
    auto [same, opp] = branch(ctx, p, ra, rb);
    push(std::move(same));
    push(std::move(opp));
  }
  return best;
}

} // namespace cogedit::bb
