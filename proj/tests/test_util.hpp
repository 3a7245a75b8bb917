#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "caymin/graph.hpp"

namespace testutil {

// Deterministic rng for the seeded random suites.
struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

inline caymin::Graph random_graph(int n, int percent, SplitMix& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.below(100) < percent) edges.emplace_back(u, v);
  return caymin::Graph(n, std::move(edges));
}

inline bool graph_connected(const caymin::Graph& g) {
  if (g.n() == 0) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == g.n();
}

// Minimum vertex set whose removal separates every source from every target
// (vertices of the terminal sets may be removed too). Exhaustive over all
// subsets; hosts must be small.
inline int brute_min_vertex_cut(const caymin::Graph& g, const std::vector<int>& sources,
                                const std::vector<int>& targets) {
  const int n = g.n();
  std::set<int> target_set(targets.begin(), targets.end());
  int best = n + 1;
  for (std::uint32_t cut = 0; cut < (1u << n); ++cut) {
    int size = __builtin_popcount(cut);
    if (size >= best) continue;
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    bool leak = false;
    for (int s : sources)
      if (!(cut & (1u << s))) {
        if (target_set.count(s)) leak = true;
        stack.push_back(s);
        seen[s] = 1;
      }
    while (!stack.empty() && !leak) {
      int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u)) {
        if (seen[w] || (cut & (1u << w))) continue;
        if (target_set.count(w)) {
          leak = true;
          break;
        }
        seen[w] = 1;
        stack.push_back(w);
      }
    }
    if (!leak) best = size;
  }
  return best;
}

inline caymin::Graph petersen() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);        // outer cycle
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    edges.emplace_back(i, 5 + i);              // spokes
  }
  return caymin::Graph(10, std::move(edges));
}

}  // namespace testutil
