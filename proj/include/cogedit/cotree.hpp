#pragma once
// Cotrees: rooted trees whose internal nodes are labelled series or parallel,
// leaves are graph vertices, and adjacent tree levels alternate labels. Two
// vertices are adjacent in the realized graph iff their lowest common
// ancestor is a series node.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogedit/graph.hpp"

namespace cogedit {

enum class NodeKind : std::uint8_t { series, parallel };

struct NotCographError : std::runtime_error {
  std::array<int, 4> witness; // an induced path a-b-c-d
  NotCographError(std::array<int, 4> p4, const std::string& what)
      : std::runtime_error(what), witness(p4) {}
};

struct Cotree {
  enum class Label : std::uint8_t { leaf, series, parallel };
  struct Node {
    Label label = Label::leaf;
    int vertex = -1; // leaves only
    std::vector<int> children;
  };

  std::vector<Node> nodes;
  int root = -1;

  bool empty() const { return root < 0; }
  int leaf_count() const;

  int add_leaf(int vertex);
  int add_internal(Label label, std::vector<int> children);

  // Canonical form: same-label parent/child collapsed, single-child internal
  // nodes spliced out, children ordered by minimum leaf vertex.
  void canonicalize();

  // Term such as "S(0,P(1,2),3)"; leaves print their vertex id.
  std::string to_term() const;
};

// Realizes the cotree on vertices 0..n-1; leaves must be exactly that set.
Graph cotree_to_graph(const Cotree& t);

// Builds the cotree of g, or throws NotCographError carrying an induced-P4
// witness. Canonical output: root is series iff g is connected (n >= 2).
Cotree build_cotree(const Graph& g);

// First induced P4 in scan order, as the path a-b-c-d; nullopt if none.
// The limited overload only considers vertices < limit.
std::optional<std::array<int, 4>> find_induced_p4(const Graph& g);
std::optional<std::array<int, 4>> find_induced_p4(const Graph& g, int limit);

// True iff g has an induced P4 whose vertex set contains both u and v.
bool p4_through_pair(const Graph& g, int u, int v);

} // namespace cogedit
