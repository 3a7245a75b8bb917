#include "caymin/ends.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "caymin/errors.hpp"

namespace caymin {

namespace {

// Unit-capacity flow network for the vertex-splitting reduction. Arc order is
// fixed so augmenting paths, and hence returned path systems, are
// reproducible.
class UnitFlow {
 public:
  explicit UnitFlow(int nodes) : head_(nodes, -1) {}

  int add_arc(int from, int to) {
    int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(1);
    next_.push_back(head_[from]);
    head_[from] = id;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = id + 1;
    return id;
  }

  int max_flow(int s, int t) {
    int total = 0;
    const int n = static_cast<int>(head_.size());
    std::vector<int> pre_arc(n);
    while (true) {
      std::vector<char> seen(n, 0);
      std::deque<int> queue{s};
      seen[s] = 1;
      bool reached = false;
      while (!queue.empty() && !reached) {
        int u = queue.front();
        queue.pop_front();
        for (int a = head_[u]; a >= 0; a = next_[a]) {
          if (cap_[a] == 0 || seen[to_[a]]) continue;
          seen[to_[a]] = 1;
          pre_arc[to_[a]] = a;
          if (to_[a] == t) {
            reached = true;
            break;
          }
          queue.push_back(to_[a]);
        }
      }
      if (!reached) break;
      for (int v = t; v != s;) {
        int a = pre_arc[v];
        cap_[a] -= 1;
        cap_[a ^ 1] += 1;
        v = to_[a ^ 1];
      }
      ++total;
    }
    return total;
  }

  bool saturated(int arc) const { return cap_[arc] == 0; }

  // The unique saturated forward arc out of `node`, if any.
  int saturated_out(int node) const {
    for (int a = head_[node]; a >= 0; a = next_[a])
      if ((a & 1) == 0 && cap_[a] == 0) return a;
    return -1;
  }

  int arc_to(int a) const { return to_[a]; }

 private:
  std::vector<int> head_, to_, cap_, next_;
};

}  // namespace

EndProfile live_components(const Ball& ball, int r) {
  if (r < 0 || r >= ball.radius)
    throw RadiusOutOfRangeError("live_components needs 0 <= r < radius, got r=" +
                                std::to_string(r));
  EndProfile profile;
  profile.inner_radius = r;
  profile.outer_radius = ball.radius;
  const int n = ball.vertex_count();
  std::vector<char> seen(n, 0);
  for (int v = 0; v < n; ++v) {
    if (seen[v] || ball.dist[v] <= r) continue;
    EndComponent comp;
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.vertices.push_back(u);
      if (ball.dist[u] == ball.radius) comp.live = true;
      for (int w : ball.adj[u])
        if (!seen[w] && ball.dist[w] > r) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    if (comp.live) ++profile.live_count;
    profile.components.push_back(std::move(comp));
  }
  return profile;
}

int end_count_estimate(std::shared_ptr<const GroupModel> model, const GenSet& gens,
                       int r, int R) {
  if (r >= R) throw RadiusOutOfRangeError("end_count_estimate needs r < R");
  Ball ball = build_ball(std::move(model), gens, R);
  return live_components(ball, r).live_count;
}

DisjointPaths max_disjoint_paths(const Graph& g, const std::vector<int>& sources,
                                 const std::vector<int>& targets) {
  if (sources.empty() || targets.empty())
    throw EmptyTerminalSetError("max_disjoint_paths needs nonempty terminal sets");
  std::vector<char> is_source(g.n(), 0), is_target(g.n(), 0);
  for (int s : sources) {
    if (s < 0 || s >= g.n()) throw IndexOutOfBoundsError("source outside graph");
    is_source[s] = 1;
  }
  for (int t : targets) {
    if (t < 0 || t >= g.n()) throw IndexOutOfBoundsError("target outside graph");
    if (is_source[t])
      throw EmptyTerminalSetError("source and target sets must be disjoint");
    is_target[t] = 1;
  }

  const int n = g.n();
  auto vin = [](int v) { return 2 * v; };
  auto vout = [](int v) { return 2 * v + 1; };
  const int super_s = 2 * n, super_t = 2 * n + 1;
  UnitFlow flow(2 * n + 2);
  std::vector<int> split_arc(n);
  for (int v = 0; v < n; ++v) split_arc[v] = flow.add_arc(vin(v), vout(v));
  for (auto [u, v] : g.edges()) {
    flow.add_arc(vout(u), vin(v));
    flow.add_arc(vout(v), vin(u));
  }
  std::vector<int> source_arcs;
  for (int v = 0; v < n; ++v)
    if (is_source[v]) source_arcs.push_back(flow.add_arc(super_s, vin(v)));
  for (int v = 0; v < n; ++v)
    if (is_target[v]) flow.add_arc(vout(v), super_t);

  DisjointPaths out;
  out.count = flow.max_flow(super_s, super_t);

  for (int arc : source_arcs) {
    if (!flow.saturated(arc)) continue;
    std::vector<int> path;
    int node = flow.arc_to(arc);  // some v_in
    while (node != super_t) {
      path.push_back(node / 2);
      int next = flow.saturated_out(vout(node / 2));
      node = flow.arc_to(next);
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

namespace {

struct ComponentView {
  Graph graph;
  std::vector<int> ball_of;  // subgraph index -> ball index
  std::vector<int> sources;  // subgraph indices
  std::vector<int> targets;
};

ComponentView component_view(const Ball& ball, const EndComponent& comp,
                             int source_sphere) {
  ComponentView view;
  std::unordered_map<int, int> sub_of;
  view.ball_of = comp.vertices;
  for (int i = 0; i < static_cast<int>(comp.vertices.size()); ++i)
    sub_of.emplace(comp.vertices[i], i);
  std::vector<std::pair<int, int>> edges;
  for (int u : comp.vertices)
    for (int w : ball.adj[u])
      if (u < w && sub_of.count(w)) edges.emplace_back(sub_of[u], sub_of[w]);
  view.graph = Graph(static_cast<int>(comp.vertices.size()), std::move(edges));
  for (int i = 0; i < static_cast<int>(comp.vertices.size()); ++i) {
    int d = ball.dist[comp.vertices[i]];
    if (d == source_sphere) view.sources.push_back(i);
    if (d == ball.radius) view.targets.push_back(i);
  }
  return view;
}

}  // namespace

int thin_end_size_at_scale(const Ball& ball, int r, int component_id) {
  if (r < 0 || r > ball.radius - 2)
    throw RadiusOutOfRangeError(
        "thin_end_size_at_scale needs 0 <= r <= radius-2 so the source and "
        "target spheres differ");
  EndProfile profile = live_components(ball, r);
  if (component_id < 0 ||
      component_id >= static_cast<int>(profile.components.size()))
    throw IndexOutOfBoundsError("no such component");
  const EndComponent& comp = profile.components[component_id];
  if (!comp.live) throw DeadComponentError("component does not reach the outer sphere");
  ComponentView view = component_view(ball, comp, r + 1);
  return max_disjoint_paths(view.graph, view.sources, view.targets).count;
}

ExtractResult extract_rays(const Ball& ball, int component_id, int m,
                           int start_radius) {
  if (m < 1) throw ParseError("extract_rays: m must be >= 1");
  if (start_radius < 1 || start_radius > ball.radius - 1)
    throw RadiusOutOfRangeError("extract_rays needs 1 <= start_radius <= radius-1");
  EndProfile profile = live_components(ball, start_radius - 1);
  if (component_id < 0 ||
      component_id >= static_cast<int>(profile.components.size()))
    throw IndexOutOfBoundsError("no such component");
  const EndComponent& comp = profile.components[component_id];
  if (!comp.live) throw DeadComponentError("component does not reach the outer sphere");

  ComponentView view = component_view(ball, comp, start_radius);
  DisjointPaths flow = max_disjoint_paths(view.graph, view.sources, view.targets);
  ExtractResult out;
  out.max_found = flow.count;
  if (flow.count < m) return out;

  RaySystem rays;
  rays.start_radius = start_radius;
  rays.component_id = component_id;
  for (int i = 0; i < m; ++i) {
    std::vector<int> path;
    for (int v : flow.paths[i]) path.push_back(view.ball_of[v]);
    rays.paths.push_back(std::move(path));
  }
  out.rays = std::move(rays);
  return out;
}

bool validate_ray_system(const Ball& ball, const RaySystem& rays) {
  std::vector<char> used(ball.vertex_count(), 0);
  if (rays.paths.empty()) return false;
  for (const auto& path : rays.paths) {
    if (path.empty()) return false;
    for (int v : path) {
      if (v < 0 || v >= ball.vertex_count()) return false;
      if (used[v]) return false;
      used[v] = 1;
    }
    if (ball.dist[path.front()] != rays.start_radius) return false;
    if (ball.dist[path.back()] != ball.radius) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (!ball.has_edge(path[i], path[i + 1])) return false;
  }
  return true;
}

}  // namespace caymin
