#include "cogedit/insertion.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogedit {

namespace {

// For equal-size sets, "contains the lowest differing bit" is sorted-sequence
// lexicographic order.
bool lex_less(const Bits& a, const Bits& b) {
  const std::uint64_t* wa = a.data();
  const std::uint64_t* wb = b.data();
  for (int i = 0; i < a.words(); ++i) {
    std::uint64_t d = wa[i] ^ wb[i];
    if (d) return (wa[i] >> std::countr_zero(d)) & 1u;
  }
  return false;
}

} // namespace

void DynCotree::reset(int capacity) {
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  nodes_.clear();
  root_ = -1;
  cap_ = capacity;
  words_ = (capacity + 63) / 64;
  leaf_total_ = 0;
  present_ = Bits(capacity);
  l_.clear();
  a_.clear();
  order_.clear();
}

int DynCotree::new_leaf(int v) {
  Node n;
  n.label = Cotree::Label::leaf;
  n.vertex = v;
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int DynCotree::new_internal(Cotree::Label label) {
  Node n;
  n.label = label;
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

void DynCotree::add_child(int parent, int child) {
  nodes_[parent].children.push_back(child);
  nodes_[child].parent = parent;
}

void DynCotree::replace_child(int parent, int oldc, int newc) {
  for (int& c : nodes_[parent].children) {
    if (c == oldc) {
      c = newc;
      nodes_[newc].parent = parent;
      return;
    }
  }
  throw std::logic_error("replace_child: not a child");
}

void DynCotree::compute_sets() {
  std::size_t need = nodes_.size() * std::size_t(words_);
  if (l_.size() < need) {
    l_.resize(need);
    a_.resize(need);
  }
  order_.clear();
  if (root_ < 0) return;

  // post-order via two-stack trick
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order_.push_back(u);
    for (int c : nodes_[u].children) stack.push_back(c);
  }
  std::reverse(order_.begin(), order_.end());

  for (int u : order_) {
    std::uint64_t* lu = lbits(u);
    for (int i = 0; i < words_; ++i) lu[i] = 0;
    if (nodes_[u].label == Cotree::Label::leaf) {
      lu[nodes_[u].vertex >> 6] |= std::uint64_t(1) << (nodes_[u].vertex & 63);
    } else {
      for (int c : nodes_[u].children) {
        const std::uint64_t* lc = lbits(c);
        for (int i = 0; i < words_; ++i) lu[i] |= lc[i];
      }
    }
  }
  // pre-order = reverse post-order: parents before children
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    int u = *it;
    if (u == root_) {
      std::uint64_t* au = abits(u);
      for (int i = 0; i < words_; ++i) au[i] = 0;
    }
    bool series = nodes_[u].label == Cotree::Label::series;
    for (int c : nodes_[u].children) {
      std::uint64_t* ac = abits(c);
      const std::uint64_t* au = abits(u);
      const std::uint64_t* lu = lbits(u);
      const std::uint64_t* lc = lbits(c);
      for (int i = 0; i < words_; ++i)
        ac[i] = au[i] | (series ? (lu[i] & ~lc[i]) : 0);
    }
  }
}

DynCotree::Fill DynCotree::best_fill(const Bits& lower, const Bits& target) {
  Fill best;
  best.m = Bits(cap_);
  if (root_ < 0) {
    // empty tree: M must be empty, and lower/target are empty too
    best.cost = target.count();
    return best;
  }
  compute_sets();

  const std::uint64_t* lo = lower.data();
  const std::uint64_t* tg = target.data();
  Bits cur(cap_), diff(cap_), bestdiff(cap_);
  std::uint64_t* cw = cur.data();
  std::uint64_t* dw = diff.data();
  bool have = false;
  std::vector<int> bundle, bestbundle;
  int bestnode = -1;
  AttachMode bestmode = AttachMode::par_point;
  long long bestcost = 0;

  auto consider = [&](int node, AttachMode mode, const std::vector<int>* r0) {
    // feasibility: lower subset of cur
    for (int i = 0; i < words_; ++i)
      if (lo[i] & ~cw[i]) return;
    long long cost = 0;
    for (int i = 0; i < words_; ++i) {
      dw[i] = cw[i] ^ tg[i];
      cost += std::popcount(dw[i]);
    }
    if (have && (cost > bestcost || (cost == bestcost && !lex_less(diff, bestdiff))))
      return;
    have = true;
    bestcost = cost;
    best.m = cur;
    bestdiff = diff;
    bestnode = node;
    bestmode = mode;
    bestbundle = r0 ? *r0 : std::vector<int>{};
  };

  for (int x : order_) {
    const Node& nx = nodes_[x];
    const std::uint64_t* ax = abits(x);
    const std::uint64_t* lx = lbits(x);

    for (int i = 0; i < words_; ++i) cw[i] = ax[i];
    consider(x, AttachMode::par_point, nullptr);
    for (int i = 0; i < words_; ++i) cw[i] = ax[i] | lx[i];
    consider(x, AttachMode::ser_point, nullptr);

    if (nx.label == Cotree::Label::leaf || nx.children.size() < 3) continue;

    if (nx.label == Cotree::Label::parallel) {
      // M = A(x) + union of L(c) over chosen children; child c is forced when
      // it carries a required leaf, otherwise included iff strictly helpful.
      bool feasible = true;
      for (int i = 0; i < words_; ++i)
        if (lo[i] & ~(ax[i] | lx[i])) { feasible = false; break; }
      if (!feasible) continue;
      bundle.clear();
      for (int i = 0; i < words_; ++i) cw[i] = ax[i];
      for (int c : nx.children) {
        const std::uint64_t* lc = lbits(c);
        bool forced = false;
        long long gain = 0, pain = 0;
        for (int i = 0; i < words_; ++i) {
          if (lc[i] & lo[i]) forced = true;
          gain += std::popcount(lc[i] & tg[i]);
          pain += std::popcount(lc[i] & ~tg[i]);
        }
        if (forced || gain > pain) {
          bundle.push_back(c);
          for (int i = 0; i < words_; ++i) cw[i] |= lc[i];
        }
      }
      if (bundle.size() >= 2 && bundle.size() < nx.children.size())
        consider(x, AttachMode::bundle, &bundle);
    } else {
      // M = A(x) + L(x) - union of L(c) over excluded children; a child
      // carrying a required leaf must stay, otherwise excluded iff helpful.
      bool feasible = true;
      for (int i = 0; i < words_; ++i)
        if (lo[i] & ~(ax[i] | lx[i])) { feasible = false; break; }
      if (!feasible) continue;
      bundle.clear();
      for (int i = 0; i < words_; ++i) cw[i] = ax[i] | lx[i];
      for (int c : nx.children) {
        const std::uint64_t* lc = lbits(c);
        bool keep = false;
        long long gain = 0, pain = 0;
        for (int i = 0; i < words_; ++i) {
          if (lc[i] & lo[i]) keep = true;
          gain += std::popcount(lc[i] & ~tg[i]); // saved by excluding c
          pain += std::popcount(lc[i] & tg[i]);  // lost by excluding c
        }
        if (!keep && gain > pain) {
          bundle.push_back(c);
          for (int i = 0; i < words_; ++i) cw[i] &= ~lc[i];
        }
      }
      if (bundle.size() >= 2 && bundle.size() < nx.children.size())
        consider(x, AttachMode::bundle, &bundle);
    }
  }

  best.cost = bestcost;
  best.node = bestnode;
  best.mode = bestmode;
  best.bundle = bestbundle;
  return best;
}

void DynCotree::attach(int v, const Fill& f) {
  if (v < 0 || v >= cap_) throw std::invalid_argument("vertex out of range");
  if (present_.test(v)) throw std::invalid_argument("vertex already inserted");
  present_.set(v);
  ++leaf_total_;

  if (root_ < 0) {
    root_ = new_leaf(v);
    return;
  }

  int leaf = new_leaf(v);
  if (f.mode == AttachMode::bundle) {
    int p = f.node;
    Cotree::Label plabel = nodes_[p].label; // nodes_ may reallocate below
    if (plabel == Cotree::Label::leaf) throw std::logic_error("bundle at a leaf");
    int r = new_internal(plabel);
    // move the bundle children under r, keeping the rest in place
    auto& pc = nodes_[p].children;
    for (int c : f.bundle) {
      auto it = std::find(pc.begin(), pc.end(), c);
      if (it == pc.end()) throw std::logic_error("bundle child missing");
      pc.erase(it);
      add_child(r, c);
    }
    int q = new_internal(plabel == Cotree::Label::series ? Cotree::Label::parallel
                                                         : Cotree::Label::series);
    add_child(q, r);
    add_child(q, leaf);
    add_child(p, q);
    return;
  }

  Cotree::Label want = f.mode == AttachMode::par_point ? Cotree::Label::parallel
                                                       : Cotree::Label::series;
  int x = f.node;
  if (nodes_[x].label == want) {
    // internal node of the target label: v becomes one more child
    add_child(x, leaf);
    return;
  }
  if (x == root_) {
    int q = new_internal(want);
    add_child(q, x);
    add_child(q, leaf);
    root_ = q;
    return;
  }
  int p = nodes_[x].parent;
  if (nodes_[p].label == want) {
    add_child(p, leaf);
    return;
  }
  int q = new_internal(want);
  replace_child(p, x, q);
  add_child(q, x);
  add_child(q, leaf);
}

void DynCotree::attach_exact(int v, const Bits& m) {
  Fill f = best_fill(m, m);
  if (f.cost != 0) throw std::logic_error("neighborhood not attachable as-is");
  attach(v, f);
}

Cotree DynCotree::snapshot() const {
  Cotree t;
  if (root_ < 0) return t;
  // copy in arena order; ids are preserved, canonicalize() compacts
  t.nodes.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    t.nodes[i].label = nodes_[i].label;
    t.nodes[i].vertex = nodes_[i].vertex;
    t.nodes[i].children = nodes_[i].children;
  }
  t.root = root_;
  t.canonicalize();
  return t;
}

} // namespace cogedit
