#pragma once

#include <bitset>
#include <string>
#include <string_view>
#include <vector>

namespace synq {

inline constexpr int kMaxVertices = 256;
using VertexSet = std::bitset<kMaxVertices>;

/// Simple undirected graph: no loops, symmetric adjacency.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n_vertices() const { return n_; }
  int n_edges() const;
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const VertexSet& neighbors(int v) const { return adj_[v]; }
  VertexSet closed_neighborhood(int v) const;
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted

  Graph complement() const;
  static Graph complete(int n);
  static Graph cycle(int n);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;
  int n_ = 0;
  std::vector<VertexSet> adj_;
};

/// DIMACS edge format: `p edge n m` header then `e u v` lines, 1-indexed.
/// Duplicate edges collapse; loops and out-of-range vertices are errors.
Graph parse_dimacs(std::string_view text);
std::string to_dimacs(const Graph& g);
std::string adjacency_text(const Graph& g);

std::vector<VertexSet> maximal_cliques(const Graph& g);
std::vector<VertexSet> cliques_of_size(const Graph& g, int k);
int clique_number(const Graph& g);
bool has_clique(const Graph& g, int k);

/// Subgraph of vertices and edges lying in at least one n-clique.
struct CliqueCore {
  Graph core;                   // compacted
  std::vector<int> vertex_map;  // core index -> original vertex
  VertexSet kept;               // original vertices kept
  Graph masked;                 // original vertex count, core edges only
};
CliqueCore clique_core(const Graph& g, int n);

/// Vertex set meeting every n-clique of the core in the same number m of
/// vertices. Returned sets pass both the inclusion-minimality filter and
/// the indecomposability filter; the flags record each check separately.
struct HSet {
  VertexSet vertices;  // original indexing
  int multiplicity = 0;
  bool inclusion_minimal = false;
  bool indecomposable = false;
};
std::vector<HSet> minimal_h_sets(const Graph& g, int n, int size_cap = 20);

struct ExactInvariants {
  int clique_number = 0;
  int chromatic_number = 0;
};
/// Brute force; rejects graphs with more than 12 vertices.
ExactInvariants exact_invariants(const Graph& g);
int chromatic_number(const Graph& g);

}  // namespace synq
