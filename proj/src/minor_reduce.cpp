#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "caymin/errors.hpp"
#include "caymin/minor.hpp"

namespace caymin::detail {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey key(int u, int v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

// Interior of edge (u,v) oriented to run from `from`.
std::vector<int> oriented(const std::map<EdgeKey, std::vector<int>>& hidden, int from,
                          int to) {
  auto it = hidden.find(key(from, to));
  if (it == hidden.end() || it->second.empty()) return {};
  std::vector<int> path = it->second;
  if (from > to) std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

// Deleting vertices of degree <= 1 preserves containment of patterns with min
// degree >= 2: such a vertex can only be a leaf whose single edge stays inside
// its own branch set. Suppressing a degree-2 vertex (contracting one of its
// edges) preserves containment of patterns with min degree >= 3 in both
// directions; the contracted path is recorded so certificates lift back.
Reduction reduce_host(const Graph& host, int pattern_min_degree) {
  Reduction red;
  const int n = host.n();
  if (pattern_min_degree < 2 || n == 0) {
    red.reduced = host;
    red.orig_of.resize(n);
    std::iota(red.orig_of.begin(), red.orig_of.end(), 0);
    return red;
  }

  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : host.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::map<EdgeKey, std::vector<int>> hidden;  // interiors in original ids
  std::vector<char> alive(n, 1);
  std::deque<int> work;
  for (int v = 0; v < n; ++v) work.push_back(v);

  auto erase_edge = [&](int u, int v) {
    adj[u].erase(v);
    adj[v].erase(u);
    hidden.erase(key(u, v));
  };

  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    if (!alive[v]) continue;
    int deg = static_cast<int>(adj[v].size());
    if (deg == 0) {
      alive[v] = 0;
    } else if (deg == 1) {
      int u = *adj[v].begin();
      erase_edge(u, v);
      alive[v] = 0;
      work.push_back(u);
    } else if (deg == 2 && pattern_min_degree >= 3) {
      auto it = adj[v].begin();
      int a = *it++;
      int b = *it;
      if (adj[a].count(b)) {
        // Parallel path is redundant; keep the existing a-b edge.
        erase_edge(a, v);
        erase_edge(b, v);
        alive[v] = 0;
        work.push_back(a);
        work.push_back(b);
      } else {
        std::vector<int> interior = oriented(hidden, a, v);
        interior.push_back(v);
        for (int w : oriented(hidden, v, b)) interior.push_back(w);
        erase_edge(a, v);
        erase_edge(b, v);
        alive[v] = 0;
        if (a > b) std::reverse(interior.begin(), interior.end());
        adj[a].insert(b);
        adj[b].insert(a);
        hidden[key(a, b)] = std::move(interior);
      }
    }
  }

  std::vector<int> new_id(n, -1);
  for (int v = 0; v < n; ++v)
    if (alive[v]) {
      new_id[v] = static_cast<int>(red.orig_of.size());
      red.orig_of.push_back(v);
    }
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    if (alive[v])
      for (int u : adj[v])
        if (u > v) edges.emplace_back(new_id[v], new_id[u]);
  red.reduced = Graph(static_cast<int>(red.orig_of.size()), std::move(edges));
  for (auto& [k, interior] : hidden) {
    auto [u, v] = k;
    red.hidden[key(new_id[u], new_id[v])] = interior;
  }
  return red;
}

MinorEmbedding lift_embedding(const Graph& original, const Reduction& red,
                              const MinorEmbedding& emb) {
  MinorEmbedding out;
  out.pattern = emb.pattern;
  const int h = emb.pattern.n();
  out.branch_sets.resize(h);
  std::vector<int> owner(red.reduced.n(), -1);
  for (int i = 0; i < h; ++i)
    for (int v : emb.branch_sets[i]) {
      owner[v] = i;
      out.branch_sets[i].push_back(red.orig_of[v]);
    }

  // Internal reduced edges pull their contracted interiors into the set.
  for (auto& [k, interior] : red.hidden) {
    auto [u, v] = k;
    if (owner[u] != -1 && owner[u] == owner[v])
      for (int w : interior) out.branch_sets[owner[u]].push_back(w);
  }

  for (auto [pu, pv] : emb.pattern.edges()) {
    auto it = emb.edge_witness.find({pu, pv});
    if (it == emb.edge_witness.end()) it = emb.edge_witness.find({pv, pu});
    if (it == emb.edge_witness.end())
      throw IndexOutOfBoundsError("certificate is missing an edge witness");
    auto [x, y] = it->second;
    // Orient so x carries pu's side.
    if (owner[x] != pu) std::swap(x, y);
    std::vector<int> interior = oriented(red.hidden, x, y);
    if (interior.empty()) {
      out.edge_witness[{pu, pv}] = {red.orig_of[x], red.orig_of[y]};
    } else {
      for (int w : interior) out.branch_sets[pu].push_back(w);
      out.edge_witness[{pu, pv}] = {interior.back(), red.orig_of[y]};
    }
  }

  for (auto& bs : out.branch_sets) {
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  }
  (void)original;
  return out;
}

}  // namespace caymin::detail
