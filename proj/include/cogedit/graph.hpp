#pragma once
// Undirected simple graphs as packed adjacency bit rows, symmetric pair
// weights, and edit sets (symmetric-difference edge toggles).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cogedit {

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  int words() const { return words_; }

  bool adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (rows_[std::size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  void set_edge(int u, int v, bool present);
  void toggle_edge(int u, int v);

  const std::uint64_t* row(int u) const {
    check_vertex(u);
    return rows_.data() + std::size_t(u) * words_;
  }
  // First 32 adjacency bits of u; the whole row when n <= 32.
  std::uint32_t row32(int u) const {
    return static_cast<std::uint32_t>(row(u)[0]);
  }

  long long edge_count() const;
  int degree(int u) const;
  std::vector<std::pair<int, int>> edge_list() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;
  void check_pair(int u, int v) const;

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> rows_;
};

Graph complement(const Graph& g);
// Vertices of mask (bits must lie below g.n()) re-labeled in ascending order.
Graph induced_subgraph(const Graph& g, std::uint64_t mask);

// |E(a) symmetric-difference E(b)|; graphs must have equal n.
long long distance(const Graph& a, const Graph& b);
// distance / C(n,2); requires n >= 2.
double normalized_distance(const Graph& a, const Graph& b);

class WeightMatrix;

struct EditSet {
  std::vector<std::pair<int, int>> pairs; // stored as (min,max)
  void add(int u, int v);
  void normalize(); // sort + drop duplicates
  std::size_t size() const { return pairs.size(); }
  double weight(const WeightMatrix& w) const;
};

// Toggles every pair of f in a copy of g.
Graph apply_edits(const Graph& g, const EditSet& f);

class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(int n, double fill = 1.0);

  int n() const { return n_; }
  // Row stride is 4*chunks doubles, zero-padded; matches the pair_sums kernel.
  std::size_t chunks() const { return stride_ / 4; }

  double at(int u, int v) const;
  void set(int u, int v, double w); // w must be finite and >= 0
  const double* row(int u) const { return w_.data() + std::size_t(u) * stride_; }

  double total() const; // sum over u < v
  bool is_unit() const; // every off-diagonal entry equals 1.0

 private:
  int n_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> w_;
};

// Weighted crossing-edge / crossing-non-edge sums between disjoint vertex
// masks over the first 32 vertices of g.
double par_cost(const Graph& g, const WeightMatrix& w, std::uint32_t a, std::uint32_t b);
double ser_cost(const Graph& g, const WeightMatrix& w, std::uint32_t a, std::uint32_t b);

// Graph text format: "n m" header, then one "u v" line per edge, 0-indexed.
// Weight text format: one "u v w" line per listed pair; unlisted pairs are 1.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph load_graph(const std::string& path);              // "-" reads stdin
void save_graph(const std::string& path, const Graph& g); // "-" writes stdout
WeightMatrix read_weights(std::istream& in, int n);
WeightMatrix load_weights(const std::string& path, int n);

} // namespace cogedit
