#include "cogedit/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cogedit/kernels.hpp"

namespace cogedit {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64), rows_(std::size_t(n) * words_, 0) {
  if (n < 0) throw std::invalid_argument("graph size must be non-negative");
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
}

void Graph::check_pair(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loops are not representable");
}

void Graph::set_edge(int u, int v, bool present) {
  check_pair(u, v);
  std::uint64_t bu = std::uint64_t(1) << (v & 63);
  std::uint64_t bv = std::uint64_t(1) << (u & 63);
  if (present) {
    rows_[std::size_t(u) * words_ + (v >> 6)] |= bu;
    rows_[std::size_t(v) * words_ + (u >> 6)] |= bv;
  } else {
    rows_[std::size_t(u) * words_ + (v >> 6)] &= ~bu;
    rows_[std::size_t(v) * words_ + (u >> 6)] &= ~bv;
  }
}

void Graph::toggle_edge(int u, int v) {
  check_pair(u, v);
  rows_[std::size_t(u) * words_ + (v >> 6)] ^= std::uint64_t(1) << (v & 63);
  rows_[std::size_t(v) * words_ + (u >> 6)] ^= std::uint64_t(1) << (u & 63);
}

long long Graph::edge_count() const {
  long long twice = 0;
  for (int u = 0; u < n_; ++u) twice += degree(u);
  return twice / 2;
}

int Graph::degree(int u) const {
  const std::uint64_t* r = row(u);
  int d = 0;
  for (int i = 0; i < words_; ++i) d += std::popcount(r[i]);
  return d;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    const std::uint64_t* r = row(u);
    for (int i = 0; i < words_; ++i) {
      std::uint64_t w = r[i];
      while (w) {
        int v = 64 * i + std::countr_zero(w);
        w &= w - 1;
        if (v > u) out.emplace_back(u, v);
      }
    }
  }
  return out;
}

Graph complement(const Graph& g) {
  int n = g.n();
  Graph c(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) c.set_edge(u, v, true);
  return c;
}

Graph induced_subgraph(const Graph& g, std::uint64_t mask) {
  if (g.n() < 64 && (mask >> g.n()) != 0)
    throw std::invalid_argument("mask contains vertices outside the graph");
  std::vector<int> verts;
  std::uint64_t m = mask;
  while (m) {
    verts.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  Graph sub(static_cast<int>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (g.adjacent(verts[i], verts[j]))
        sub.set_edge(static_cast<int>(i), static_cast<int>(j), true);
  return sub;
}

long long distance(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) throw std::invalid_argument("distance needs graphs of equal order");
  long long twice = 0;
  for (int u = 0; u < a.n(); ++u)
    twice += static_cast<long long>(
        kernels::xor_popcount(a.row(u), b.row(u), a.words()));
  return twice / 2;
}

double normalized_distance(const Graph& a, const Graph& b) {
  if (a.n() < 2) throw std::invalid_argument("normalized distance needs n >= 2");
  double pairs = 0.5 * a.n() * (a.n() - 1);
  return static_cast<double>(distance(a, b)) / pairs;
}

void EditSet::add(int u, int v) {
  if (u == v) throw std::invalid_argument("edit pairs must be distinct vertices");
  if (u > v) std::swap(u, v);
  pairs.emplace_back(u, v);
}

void EditSet::normalize() {
  for (auto& p : pairs)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

double EditSet::weight(const WeightMatrix& w) const {
  double s = 0.0;
  for (auto [u, v] : pairs) s += w.at(u, v);
  return s;
}

Graph apply_edits(const Graph& g, const EditSet& f) {
  Graph out = g;
  for (auto [u, v] : f.pairs) out.toggle_edge(u, v);
  return out;
}

WeightMatrix::WeightMatrix(int n, double fill)
    : n_(n), stride_((std::size_t(n) + 3) / 4 * 4), w_(std::size_t(n) * stride_, 0.0) {
  if (n < 0) throw std::invalid_argument("weight matrix size must be non-negative");
  if (!(fill >= 0.0) || !std::isfinite(fill))
    throw std::invalid_argument("weights must be finite and non-negative");
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) w_[std::size_t(u) * stride_ + v] = fill;
}

double WeightMatrix::at(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw std::invalid_argument("vertex out of range");
  return w_[std::size_t(u) * stride_ + v];
}

void WeightMatrix::set(int u, int v, double w) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v)
    throw std::invalid_argument("weights are defined on distinct vertex pairs");
  if (!(w >= 0.0) || !std::isfinite(w))
    throw std::invalid_argument("weights must be finite and non-negative");
  w += 0.0; // canonicalize -0.0
  w_[std::size_t(u) * stride_ + v] = w;
  w_[std::size_t(v) * stride_ + u] = w;
}

double WeightMatrix::total() const {
  double s = 0.0;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) s += w_[std::size_t(u) * stride_ + v];
  return s;
}

bool WeightMatrix::is_unit() const {
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (u != v && w_[std::size_t(u) * stride_ + v] != 1.0) return false;
  return true;
}

namespace {

void check_masks(const Graph& g, const WeightMatrix& w, std::uint32_t a, std::uint32_t b) {
  if (g.n() != w.n()) throw std::invalid_argument("graph and weights disagree on n");
  if (a & b) throw std::invalid_argument("crossing costs need disjoint masks");
  std::uint64_t all = std::uint64_t(a) | b;
  if (g.n() < 32 && (all >> g.n()) != 0)
    throw std::invalid_argument("mask contains vertices outside the graph");
}

} // namespace

double par_cost(const Graph& g, const WeightMatrix& w, std::uint32_t a, std::uint32_t b) {
  check_masks(g, w, a, b);
  double s = 0.0;
  std::uint32_t m = a;
  while (m) {
    int u = std::countr_zero(m);
    m &= m - 1;
    s += kernels::pair_sums(w.row(u), g.row32(u), b, w.chunks()).edge_weight;
  }
  return s;
}

double ser_cost(const Graph& g, const WeightMatrix& w, std::uint32_t a, std::uint32_t b) {
  check_masks(g, w, a, b);
  double s = 0.0;
  std::uint32_t m = a;
  while (m) {
    int u = std::countr_zero(m);
    m &= m - 1;
    s += kernels::pair_sums(w.row(u), g.row32(u), b, w.chunks()).non_edge_weight;
  }
  return s;
}

namespace {

std::runtime_error parse_error(const std::string& what) {
  return std::runtime_error("graph parse error: " + what);
}

} // namespace

Graph read_graph(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m)) throw parse_error("missing \"n m\" header");
  if (n < 0 || n > 2'000'000) throw parse_error("vertex count out of range");
  if (m < 0) throw parse_error("edge count out of range");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw parse_error("truncated edge list");
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw parse_error("bad edge endpoint");
    g.set_edge(static_cast<int>(u), static_cast<int>(v), true);
  }
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  auto edges = g.edge_list();
  out << g.n() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

Graph load_graph(const std::string& path) {
  if (path == "-") return read_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g) {
  if (path == "-") {
    write_graph(std::cout, g);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_graph(out, g);
}

WeightMatrix read_weights(std::istream& in, int n) {
  WeightMatrix w(n, 1.0);
  long long u, v;
  double x;
  while (in >> u >> v >> x) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw std::runtime_error("weight parse error: bad vertex pair");
    w.set(static_cast<int>(u), static_cast<int>(v), x);
  }
  if (!in.eof() && in.fail()) throw std::runtime_error("weight parse error: bad entry");
  return w;
}

WeightMatrix load_weights(const std::string& path, int n) {
  if (path == "-") return read_weights(std::cin, n);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight file: " + path);
  return read_weights(in, n);
}

} // namespace cogedit
