#pragma once

#include <utility>
#include <vector>

namespace caymin {

// Finite simple undirected graph with vertices 0..n-1. Edges are stored as
// sorted unique (u,v) pairs with u < v; adjacency lists are sorted.
// Immutable after construction.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edge_list);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int min_degree() const;

  static Graph clique(int m);
  static Graph complete_bipartite(int a, int b);
  static Graph path(int n);
  static Graph cycle(int n);

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// True if the pattern is a complete graph (used for symmetry pruning).
bool is_clique_graph(const Graph& g);

}  // namespace caymin
