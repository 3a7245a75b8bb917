#include "caymin/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "caymin/errors.hpp"

namespace caymin {

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
  if (n < 0) throw ParseError("graph vertex count must be non-negative");
  for (auto& [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw IndexOutOfBoundsError("edge endpoint " + std::to_string(std::max(u, v)) +
                                  " outside graph of size " + std::to_string(n));
    if (u == v) throw ParseError("loop edge at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
  edges_ = std::move(edge_list);
  adj_.assign(n_, {});
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int d = degree(0);
  for (int v = 1; v < n_; ++v) d = std::min(d, degree(v));
  return d;
}

Graph Graph::clique(int m) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) edges.emplace_back(u, v);
  return Graph(m, std::move(edges));
}

Graph Graph::complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return Graph(a + b, std::move(edges));
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

Graph Graph::cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  if (n >= 3) edges.emplace_back(0, n - 1);
  return Graph(n, std::move(edges));
}

bool is_clique_graph(const Graph& g) {
  long long want = static_cast<long long>(g.n()) * (g.n() - 1) / 2;
  return g.edge_count() == want;
}

}  // namespace caymin
