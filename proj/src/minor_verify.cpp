#include <algorithm>
#include <string>
#include <vector>

#include "caymin/errors.hpp"
#include "caymin/minor.hpp"

namespace caymin {

namespace {

bool set_connected(const Graph& host, const std::vector<int>& verts) {
  if (verts.empty()) return false;
  std::vector<char> inside(host.n(), 0);
  for (int v : verts) inside[v] = 1;
  std::vector<int> stack{verts[0]};
  std::vector<char> seen(host.n(), 0);
  seen[verts[0]] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : host.neighbors(u))
      if (inside[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == static_cast<int>(verts.size());
}

}  // namespace

bool verify_embedding(const Graph& host, const MinorEmbedding& emb) {
  const int h = emb.pattern.n();
  if (static_cast<int>(emb.branch_sets.size()) != h) return false;

  std::vector<int> owner(host.n(), -1);
  for (int i = 0; i < h; ++i) {
    if (emb.branch_sets[i].empty()) return false;
    for (int v : emb.branch_sets[i]) {
      if (v < 0 || v >= host.n())
        throw IndexOutOfBoundsError("branch set vertex " + std::to_string(v) +
                                    " outside host of size " + std::to_string(host.n()));
      if (owner[v] != -1) return false;  // overlap (or duplicate)
      owner[v] = i;
    }
  }
  for (int i = 0; i < h; ++i)
    if (!set_connected(host, emb.branch_sets[i])) return false;

  for (auto [u, v] : emb.pattern.edges()) {
    auto it = emb.edge_witness.find({u, v});
    if (it == emb.edge_witness.end()) it = emb.edge_witness.find({v, u});
    if (it == emb.edge_witness.end()) return false;
    auto [a, b] = it->second;
    if (a < 0 || b < 0 || a >= host.n() || b >= host.n())
      throw IndexOutOfBoundsError("edge witness outside host");
    if (!host.has_edge(a, b)) return false;
    bool straight = owner[a] == u && owner[b] == v;
    bool flipped = owner[a] == v && owner[b] == u;
    if (!straight && !flipped) return false;
  }
  return true;
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::Absent:
      return "absent";
    default:
      return "budget-exhausted";
  }
}

const char* to_string(PlanarityStatus s) {
  switch (s) {
    case PlanarityStatus::Planar:
      return "planar";
    case PlanarityStatus::NonPlanar:
      return "non-planar";
    default:
      return "budget-exhausted";
  }
}

}  // namespace caymin
