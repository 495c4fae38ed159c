#include "cogedit/cotree.hpp"

#include <algorithm>

#include "cogedit/bits.hpp"
#include "cogedit/insertion.hpp"

namespace cogedit {

int Cotree::leaf_count() const {
  if (root < 0) return 0;
  int count = 0;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (nodes[u].label == Label::leaf) ++count;
    for (int c : nodes[u].children) stack.push_back(c);
  }
  return count;
}

int Cotree::add_leaf(int vertex) {
  Node n;
  n.label = Label::leaf;
  n.vertex = vertex;
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

int Cotree::add_internal(Label label, std::vector<int> children) {
  Node n;
  n.label = label;
  n.children = std::move(children);
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

void Cotree::canonicalize() {
  if (root < 0) {
    nodes.clear();
    return;
  }
  // post-order over the reachable tree
  std::vector<int> post;
  {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      post.push_back(u);
      for (int c : nodes[u].children) stack.push_back(c);
    }
    std::reverse(post.begin(), post.end());
  }

  // rep[u]: node that stands for u's subtree after collapsing
  std::vector<int> rep(nodes.size(), -1);
  for (int u : post) {
    if (nodes[u].label == Label::leaf) {
      rep[u] = u;
      continue;
    }
    std::vector<int> kids;
    for (int c : nodes[u].children) {
      int k = rep[c];
      if (nodes[k].label == nodes[u].label) {
        for (int gc : nodes[k].children) kids.push_back(gc);
      } else {
        kids.push_back(k);
      }
    }
    if (kids.size() == 1) {
      rep[u] = kids[0];
    } else {
      nodes[u].children = std::move(kids);
      rep[u] = u;
    }
  }
  root = rep[root];

  // order children by minimum leaf vertex, then compact ids
  std::vector<int> minleaf(nodes.size(), -1);
  {
    std::vector<int> stack{root};
    std::vector<int> post2;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      post2.push_back(u);
      for (int c : nodes[u].children) stack.push_back(c);
    }
    std::reverse(post2.begin(), post2.end());
    for (int u : post2) {
      if (nodes[u].label == Label::leaf) {
        minleaf[u] = nodes[u].vertex;
      } else {
        int mn = -1;
        for (int c : nodes[u].children)
          if (mn < 0 || minleaf[c] < mn) mn = minleaf[c];
        minleaf[u] = mn;
        std::sort(nodes[u].children.begin(), nodes[u].children.end(),
                  [&](int a, int b) { return minleaf[a] < minleaf[b]; });
      }
    }
  }

  std::vector<Node> compact;
  std::vector<int> remap(nodes.size(), -1);
  std::vector<int> stack{root};
  std::vector<int> pre;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    pre.push_back(u);
    for (auto it = nodes[u].children.rbegin(); it != nodes[u].children.rend(); ++it)
      stack.push_back(*it);
  }
  compact.reserve(pre.size());
  for (int u : pre) {
    remap[u] = static_cast<int>(compact.size());
    compact.push_back(std::move(nodes[u]));
  }
  for (auto& n : compact)
    for (int& c : n.children) c = remap[c];
  nodes = std::move(compact);
  root = 0;
}

namespace {

void term_of(const Cotree& t, int u, std::string& out) {
  const auto& n = t.nodes[u];
  if (n.label == Cotree::Label::leaf) {
    out += std::to_string(n.vertex);
    return;
  }
  out += n.label == Cotree::Label::series ? 'S' : 'P';
  out += '(';
  bool first = true;
  for (int c : n.children) {
    if (!first) out += ',';
    first = false;
    term_of(t, c, out);
  }
  out += ')';
}

} // namespace

std::string Cotree::to_term() const {
  if (root < 0) return "()";
  std::string out;
  term_of(*this, root, out);
  return out;
}

Graph cotree_to_graph(const Cotree& t) {
  if (t.root < 0) return Graph(0);
  // gather leaves per node in post-order
  std::vector<int> post;
  {
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      post.push_back(u);
      for (int c : t.nodes[u].children) stack.push_back(c);
    }
    std::reverse(post.begin(), post.end());
  }
  std::vector<std::vector<int>> leaves(t.nodes.size());
  int n = 0;
  for (int u : post) {
    if (t.nodes[u].label == Cotree::Label::leaf) {
      leaves[u].push_back(t.nodes[u].vertex);
      ++n;
    } else {
      if (t.nodes[u].children.size() < 2)
        throw std::invalid_argument("internal cotree node with fewer than two children");
      for (int c : t.nodes[u].children)
        leaves[u].insert(leaves[u].end(), leaves[c].begin(), leaves[c].end());
    }
  }
  std::vector<bool> seen(n, false);
  for (int v : leaves[t.root]) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("cotree leaves must be exactly 0..n-1");
    seen[v] = true;
  }
  Graph g(n);
  for (int u : post) {
    if (t.nodes[u].label != Cotree::Label::series) continue;
    const auto& ch = t.nodes[u].children;
    for (std::size_t i = 0; i < ch.size(); ++i)
      for (std::size_t j = i + 1; j < ch.size(); ++j)
        for (int a : leaves[ch[i]])
          for (int b : leaves[ch[j]]) g.set_edge(a, b, true);
  }
  return g;
}

Cotree build_cotree(const Graph& g) {
  int n = g.n();
  DynCotree t(n);
  Bits nbrs(n);
  for (int v = 0; v < n; ++v) {
    nbrs.copy_from(g.row(v));
    nbrs &= t.vertex_set();
    DynCotree::Fill f = t.best_fill(nbrs, nbrs);
    if (f.cost != 0) {
      auto p4 = find_induced_p4(g, v + 1);
      if (!p4) throw std::logic_error("insertion failed on a P4-free prefix");
      throw NotCographError(*p4, "graph contains an induced P4");
    }
    t.attach(v, f);
  }
  return t.snapshot();
}

std::optional<std::array<int, 4>> find_induced_p4(const Graph& g) {
  return find_induced_p4(g, g.n());
}

std::optional<std::array<int, 4>> find_induced_p4(const Graph& g, int limit) {
  int n = g.n();
  if (limit > n) limit = n;
  if (limit < 4) return std::nullopt;
  int words = g.words();
  Bits lim(n);
  for (int i = 0; i < limit; ++i) lim.set(i);
  Bits nb(n), nc(n), acand(n), dcand(n), d(n);

  for (int b = 0; b < limit; ++b) {
    nb.copy_from(g.row(b));
    nb &= lim;
    for (int c = b + 1; c < limit; ++c) {
      if (!g.adjacent(b, c)) continue;
      nc.copy_from(g.row(c));
      nc &= lim;
      // a: adjacent to b, not to c; d: adjacent to c, not to b
      for (int i = 0; i < words; ++i)
        acand.data()[i] = nb.data()[i] & ~nc.data()[i];
      acand.reset(c);
      for (int i = 0; i < words; ++i)
        dcand.data()[i] = nc.data()[i] & ~nb.data()[i];
      dcand.reset(b);
      if (dcand.none()) continue;
      std::optional<std::array<int, 4>> hit;
      acand.for_each([&](int a) {
        if (hit) return;
        const std::uint64_t* na = g.row(a);
        for (int i = 0; i < words; ++i)
          d.data()[i] = dcand.data()[i] & ~na[i];
        d.reset(a);
        int dd = d.lowest();
        if (dd >= 0) hit = std::array<int, 4>{a, b, c, dd};
      });
      if (hit) return hit;
    }
  }
  return std::nullopt;
}

namespace {

// Helpers over raw rows; sc is scratch sized like a row.
inline bool any_and(const std::uint64_t* a, const std::uint64_t* b, int words) {
  for (int i = 0; i < words; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

} // namespace

bool p4_through_pair(const Graph& g, int u, int v) {
  int n = g.n();
  int words = g.words();
  if (u == v) throw std::invalid_argument("pair needs distinct vertices");
  const std::uint64_t* nu = g.row(u);
  const std::uint64_t* nv = g.row(v);
  Bits cand(n), d(n);
  bool adj = g.adjacent(u, v);

  if (adj) {
    // middle pair: u-v is the central edge
    {
      Bits ac(n), dc(n);
      for (int i = 0; i < words; ++i) ac.data()[i] = nu[i] & ~nv[i];
      ac.reset(v);
      for (int i = 0; i < words; ++i) dc.data()[i] = nv[i] & ~nu[i];
      dc.reset(u);
      if (dc.any()) {
        bool found = false;
        ac.for_each([&](int a) {
          if (found) return;
          const std::uint64_t* na = g.row(a);
          for (int i = 0; i < words; ++i) d.data()[i] = dc.data()[i] & ~na[i];
          d.reset(a);
          if (d.any()) found = true;
        });
        if (found) return true;
      }
    }
    // end pair: path x-y-c-d with (x,y) = (u,v) in either order
    for (int swap = 0; swap < 2; ++swap) {
      const std::uint64_t* na = swap ? nv : nu; // path end a
      const std::uint64_t* nb = swap ? nu : nv; // its neighbor b
      int a = swap ? v : u;
      int b = swap ? u : v;
      for (int i = 0; i < words; ++i) cand.data()[i] = nb[i] & ~na[i];
      cand.reset(a);
      bool found = false;
      cand.for_each([&](int c) {
        if (found) return;
        const std::uint64_t* ncr = g.row(c);
        for (int i = 0; i < words; ++i)
          d.data()[i] = ncr[i] & ~na[i] & ~nb[i];
        d.reset(a);
        d.reset(b);
        d.reset(c);
        if (d.any()) found = true;
      });
      if (found) return true;
    }
    return false;
  }

  // non-adjacent: positions (a,c) with common neighbor b, or the two ends (a,d)
  for (int swap = 0; swap < 2; ++swap) {
    const std::uint64_t* na = swap ? nv : nu; // position a
    const std::uint64_t* ncm = swap ? nu : nv; // position c
    int a = swap ? v : u;
    for (int i = 0; i < words; ++i) cand.data()[i] = na[i] & ncm[i];
    bool found = false;
    cand.for_each([&](int b) {
      if (found) return;
      const std::uint64_t* nb = g.row(b);
      // d: adjacent to c, not to a, not to b
      for (int i = 0; i < words; ++i)
        d.data()[i] = ncm[i] & ~na[i] & ~nb[i];
      d.reset(b);
      d.reset(a);
      if (d.any()) found = true;
    });
    if (found) return true;
  }
  {
    // ends: u-b-c-v
    for (int i = 0; i < words; ++i) cand.data()[i] = nu[i] & ~nv[i];
    cand.reset(v);
    bool found = false;
    cand.for_each([&](int b) {
      if (found) return;
      const std::uint64_t* nb = g.row(b);
      for (int i = 0; i < words; ++i)
        d.data()[i] = nb[i] & nv[i] & ~nu[i];
      d.reset(u);
      if (d.any()) found = true;
    });
    if (found) return true;
  }
  return false;
}

} // namespace cogedit
