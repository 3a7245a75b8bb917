#include "caymin/ball.hpp"

#include <algorithm>
#include <string>

#include "caymin/errors.hpp"

namespace caymin {

bool Ball::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return false;
  const auto& list = adj[u];
  return std::binary_search(list.begin(), list.end(), v);
}

Ball build_ball(std::shared_ptr<const GroupModel> model, const GenSet& gens,
                int radius, int max_vertices) {
  if (!model) throw ParseError("build_ball: null model");
  if (gens.elements.empty()) throw ParseError("build_ball: empty generating set");
  if (radius < 0) throw RadiusOutOfRangeError("build_ball: negative radius");
  for (const auto& g : gens.elements)
    if (g.model_id != model->id())
      throw ModelMismatchError("generating set does not belong to model");

  Ball ball;
  ball.model = model;
  ball.gens = gens;
  ball.radius = radius;

  Element e = model->identity();
  ball.vertices.push_back(e);
  ball.dist.push_back(0);
  ball.index_of.emplace(e.key, 0);

  // Level-synchronized BFS; each new sphere is sorted by canonical key so the
  // vertex order is (distance, key) and certificates diff cleanly.
  std::vector<int> frontier{0};
  for (int d = 1; d <= radius && !frontier.empty(); ++d) {
    std::vector<std::pair<std::string, Element>> fresh;
    for (int u : frontier)
      for (const auto& gen : gens.elements) {
        Element v = model->mul(ball.vertices[u], gen);
        if (!ball.index_of.count(v.key)) {
          ball.index_of.emplace(v.key, -1);  // reserve, index assigned below
          fresh.emplace_back(v.key, std::move(v));
        }
      }
    std::sort(fresh.begin(), fresh.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    frontier.clear();
    for (auto& [key, elem] : fresh) {
      if (static_cast<int>(ball.vertices.size()) >= max_vertices)
        throw BallTooLargeError("ball exceeds vertex budget at radius " + std::to_string(d),
                                d - 1);
      int idx = static_cast<int>(ball.vertices.size());
      ball.index_of[key] = idx;
      ball.vertices.push_back(std::move(elem));
      ball.dist.push_back(d);
      frontier.push_back(idx);
    }
  }

  ball.adj.assign(ball.vertices.size(), {});
  for (int u = 0; u < ball.vertex_count(); ++u)
    for (const auto& gen : gens.elements) {
      Element v = model->mul(ball.vertices[u], gen);
      auto it = ball.index_of.find(v.key);
      if (it == ball.index_of.end()) continue;
      int w = it->second;
      if (u < w) ball.edges.emplace_back(u, w);
    }
  std::sort(ball.edges.begin(), ball.edges.end());
  ball.edges.erase(std::unique(ball.edges.begin(), ball.edges.end()), ball.edges.end());
  for (auto [u, v] : ball.edges) {
    ball.adj[u].push_back(v);
    ball.adj[v].push_back(u);
  }
  for (auto& list : ball.adj) std::sort(list.begin(), list.end());
  return ball;
}

std::vector<int> sphere(const Ball& ball, int i) {
  if (i < 0 || i > ball.radius)
    throw RadiusOutOfRangeError("sphere radius " + std::to_string(i) +
                                " outside ball of radius " + std::to_string(ball.radius));
  std::vector<int> out;
  for (int v = 0; v < ball.vertex_count(); ++v)
    if (ball.dist[v] == i) out.push_back(v);
  return out;
}

Graph induced_graph(const Ball& ball) {
  return Graph(ball.vertex_count(), ball.edges);
}

}  // namespace caymin
