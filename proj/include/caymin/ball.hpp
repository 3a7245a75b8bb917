#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "caymin/graph.hpp"
#include "caymin/group.hpp"

namespace caymin {

// Finite radius-r ball of a Cayley graph. Vertex 0 is the identity; vertices
// are ordered by (distance, canonical key) so construction is reproducible.
// Edges join u,v iff u^-1 v is a generator and both endpoints lie in the
// ball. Immutable after construction.
struct Ball {
  std::shared_ptr<const GroupModel> model;
  GenSet gens;
  int radius = 0;
  std::vector<Element> vertices;
  std::vector<int> dist;
  std::vector<std::vector<int>> adj;
  std::vector<std::pair<int, int>> edges;
  std::unordered_map<std::string, int> index_of;

  std::optional<int> find(const std::string& key) const {
    auto it = index_of.find(key);
    if (it == index_of.end()) return std::nullopt;
    return it->second;
  }
  int vertex_count() const { return static_cast<int>(vertices.size()); }
  bool has_edge(int u, int v) const;
};

inline constexpr int kDefaultBallVertexBudget = 2'000'000;

// BFS from the identity. Throws BallTooLargeError when the vertex budget is
// exceeded, carrying the largest fully explored radius.
Ball build_ball(std::shared_ptr<const GroupModel> model, const GenSet& gens,
                int radius, int max_vertices = kDefaultBallVertexBudget);

// Vertex indices at exact distance i. Throws RadiusOutOfRangeError unless
// 0 <= i <= radius.
std::vector<int> sphere(const Ball& ball, int i);

// The ball's vertex/edge data as a plain Graph, index-preserving.
Graph induced_graph(const Ball& ball);

}  // namespace caymin
