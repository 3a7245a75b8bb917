#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <cmath>
#include <cstring>
#include <iostream>
#include <numeric>
#include <vector>

#include "minor_internal.hpp"

namespace caymin::detail {

namespace {

constexpr int kMaxSlots = 24;      // widest encodable frontier
constexpr int kMaxPatternVerts = 12;
constexpr int kMaxPatternEdges = 16;
constexpr std::size_t kMaxStatesPerLevel = 8'000'000;  // memory guard

struct StateKey {
  std::array<std::uint64_t, 4> w{};
  friend bool operator==(const StateKey& a, const StateKey& b) { return a.w == b.w; }
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}


struct StateRec {
  StateKey key;  // canonical (dedup, dominance, accept checks)
  StateKey raw;  // pre-canonical naming; only kept when reconstructing, so
                 // labels along a parent chain share one naming
  std::int32_t parent = -1;
  std::int32_t bucket_next = -1;
  std::int8_t label = 0;
  bool dead = false;  // subsumed by a dominating sibling
};

std::uint64_t hash_slots(const StateKey& k) {
  // bytes 0..23 (the frontier labeling) live in w[0..2]
  return mix(mix(mix(0x452821e638d01377ull ^ k.w[0]) ^ k.w[1]) ^ k.w[2]);
}

std::uint16_t key_closed(const StateKey& k) {
  return static_cast<std::uint16_t>(k.w[3] & 0xffff);
}
std::uint16_t key_witness(const StateKey& k) {
  return static_cast<std::uint16_t>((k.w[3] >> 16) & 0xffff);
}

bool same_slots(const StateKey& a, const StateKey& b) {
  return a.w[0] == b.w[0] && a.w[1] == b.w[1] && a.w[2] == b.w[2];
}

// Mask permutations under which two states with identical slot bytes may be
// compared. For cliques every label permutation fixing the slot labeling
// keeps masks comparable as plain bit sets (identity suffices thanks to the
// rank canonization); for other patterns the comparisons quantify over the
// automorphisms fixing every label present on the frontier.
struct DomContext {
  int h = 0;
  int edge_count = 0;
  const std::vector<std::vector<std::uint8_t>>* aut_label = nullptr;
  const std::vector<std::vector<std::uint8_t>>* aut_edge = nullptr;
  bool clique = false;
};

// States of one level, bucketed by frontier labeling; each bucket keeps only
// the antichain under (closed superset, witness superset) dominance: anything
// a dominated state could still finish, its dominator finishes too.
class LevelTable {
 public:
  void reset(std::size_t expected, const DomContext* ctx, bool keep_raw) {
    states.clear();
    states.reserve(expected * 2);
    ctx_ = ctx;
    keep_raw_ = keep_raw;
    cap_ = 64;
    while (cap_ < expected * 2) cap_ <<= 1;
    buckets_.assign(cap_, -1);
  }

  bool insert(const StateKey& key, const StateKey& raw, std::int32_t parent,
              std::int8_t label) {
    if ((states.size() + 1) * 2 > cap_) rehash();
    std::size_t mask = cap_ - 1;
    std::size_t at = hash_slots(key) & mask;
    std::int32_t bucket = -1;
    while (buckets_[at] >= 0) {
      if (same_slots(states[buckets_[at]].key, key)) {
        bucket = buckets_[at];
        break;
      }
      at = (at + 1) & mask;
    }
    if (bucket < 0) {
      buckets_[at] = static_cast<std::int32_t>(states.size());
      states.push_back({key, keep_raw_ ? raw : StateKey{}, parent, -1, label, false});
      return true;
    }

    if (ctx_->clique) {
      const std::uint16_t closed = key_closed(key), witness = key_witness(key);
      for (std::int32_t i = bucket; i >= 0; i = states[i].bucket_next) {
        if (states[i].dead) continue;
        std::uint16_t c = key_closed(states[i].key), w = key_witness(states[i].key);
        if ((c & closed) == closed && (w & witness) == witness) return false;
      }
      for (std::int32_t i = bucket; i >= 0; i = states[i].bucket_next) {
        if (states[i].dead) continue;
        std::uint16_t c = key_closed(states[i].key), w = key_witness(states[i].key);
        if ((c & closed) == c && (w & witness) == w) states[i].dead = true;
      }
    } else {
      stab_.clear();
      std::uint16_t present = 0;
      const auto* bytes = reinterpret_cast<const std::uint8_t*>(key.w.data());
      for (int s = 0; s < kMaxSlots; ++s)
        if (bytes[s] >> 4) present |= 1u << ((bytes[s] >> 4) - 1);
      const auto& labels = *ctx_->aut_label;
      for (std::size_t a = 0; a < labels.size(); ++a) {
        bool fixes = true;
        for (int l = 1; l <= ctx_->h && fixes; ++l)
          if ((present & (1u << (l - 1))) && labels[a][l] != l) fixes = false;
        if (fixes) stab_.push_back(a);
      }
      // dominance of the newcomer by an entry, or of entries by the
      // newcomer, checked across every comparable mask image
      for (std::size_t si = 0; si < stab_.size(); ++si) {
        std::uint16_t nc, nw;
        permute_masks(key, stab_[si], nc, nw);
        for (std::int32_t i = bucket; i >= 0; i = states[i].bucket_next) {
          if (states[i].dead) continue;
          std::uint16_t c = key_closed(states[i].key), w = key_witness(states[i].key);
          if ((c & nc) == nc && (w & nw) == nw) return false;
        }
      }
      const std::uint16_t closed = key_closed(key), witness = key_witness(key);
      for (std::int32_t i = bucket; i >= 0; i = states[i].bucket_next) {
        if (states[i].dead) continue;
        for (std::size_t si = 0; si < stab_.size(); ++si) {
          std::uint16_t c, w;
          permute_masks(states[i].key, stab_[si], c, w);
          if ((c & closed) == c && (w & witness) == w) {
            states[i].dead = true;
            break;
          }
        }
      }
    }
    std::int32_t id = static_cast<std::int32_t>(states.size());
    states.push_back(
        {key, keep_raw_ ? raw : StateKey{}, parent, states[bucket].bucket_next, label, false});
    states[bucket].bucket_next = id;
    return true;
  }

  std::vector<StateRec> states;

 private:
  void permute_masks(const StateKey& key, std::size_t aut, std::uint16_t& closed,
                     std::uint16_t& witness) const {
    const auto& lrename = (*ctx_->aut_label)[aut];
    const auto& erename = (*ctx_->aut_edge)[aut];
    std::uint16_t c0 = key_closed(key), w0 = key_witness(key);
    closed = 0;
    witness = 0;
    for (int l = 1; l <= ctx_->h; ++l)
      if (c0 & (1u << (l - 1))) closed |= 1u << (lrename[l] - 1);
    for (int b = 0; b < ctx_->edge_count; ++b)
      if (w0 & (1u << b)) witness |= 1u << erename[b];
  }

  void rehash() {
    cap_ <<= 1;
    buckets_.assign(cap_, -1);
    std::size_t mask = cap_ - 1;
    for (std::size_t i = 0; i < states.size(); ++i) {
      // only bucket heads occupy the hash table; chains stay intact
      std::size_t at = hash_slots(states[i].key) & mask;
      bool head = true;
      while (buckets_[at] >= 0) {
        if (same_slots(states[buckets_[at]].key, states[i].key)) {
          head = false;
          break;
        }
        at = (at + 1) & mask;
      }
      if (head) buckets_[at] = static_cast<std::int32_t>(i);
    }
  }

  const DomContext* ctx_ = nullptr;
  bool keep_raw_ = false;
  std::size_t cap_ = 0;
  std::vector<std::int32_t> buckets_;
  std::vector<std::size_t> stab_;
};

struct StepPlan {
  int intro = 0;
  std::vector<int> prev_frontier;  // host ids, ascending
  std::vector<int> mid_frontier;   // prev plus intro
  std::vector<int> post_frontier;
  int v_slot = 0;
  std::vector<int> v_nbr_slots;  // mid slots adjacent to intro
  std::vector<int> mid_to_post;  // -1 = forgotten after this step
  // Distance between post slots through not-yet-introduced vertices; blocks
  // of one label farther apart than the remaining vertex supply can never
  // merge, which kills most scattered labelings early.
  std::vector<std::vector<int>> future_dist;
};

// Exact containment decision by dynamic programming along an elimination
// order. A state records, per frontier vertex, its branch-set label and
// connectivity block, which labels are sealed, and which pattern edges are
// realized; states are merged after canonizing under the pattern's
// automorphisms. The sweep is exhaustive, so an empty final table is a proof
// of absence.
class FrontierDp {
 public:
  FrontierDp(const Graph& host, const Graph& pattern, std::uint64_t budget)
      : g_(host), pat_(pattern), budget_(budget) {}

  EngineOutcome run() {
    EngineOutcome out;
    h_ = pat_.n();
    if (h_ == 0 || g_.n() < h_) {
      out.status = SearchStatus::Absent;
      return out;
    }
    if (h_ > kMaxPatternVerts || pat_.edge_count() > kMaxPatternEdges) {
      out.status = SearchStatus::BudgetExhausted;  // outside this engine's envelope
      return out;
    }
    plan_order();
    if (width_exceeded_) {
      out.status = SearchStatus::BudgetExhausted;
      return out;
    }
    build_pattern_tables();
    dom_ctx_ = {h_, pat_.edge_count(), &aut_label_, &aut_edge_, clique_};

    std::int32_t accept = sweep(false, out.expansions);
    if (aborted_) {
      out.status = SearchStatus::BudgetExhausted;
      return out;
    }
    if (accept < 0) {
      out.status = SearchStatus::Absent;
      return out;
    }
    // Existence is proven within budget; the re-run with parent tracking is
    // extraction bookkeeping and is not billed.
    budget_ = UINT64_MAX;
    std::uint64_t unused = 0;
    accept = sweep(true, unused);
    out.status = SearchStatus::Found;
    out.embedding = reconstruct(accept);
    return out;
  }

 private:
  // Width of the frontier sequence an order induces.
  int order_width(const std::vector<int>& order) const {
    const int n = g_.n();
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[order[t]] = t;
    std::vector<int> leave(n);
    for (int v = 0; v < n; ++v) {
      leave[v] = pos[v];
      for (int w : g_.neighbors(v)) leave[v] = std::max(leave[v], pos[w]);
    }
    int width = 0, cur = 0;
    for (int t = 0; t < n; ++t) {
      int mid = cur + 1;  // the newcomer joins before anything is forgotten
      width = std::max(width, mid);
      int drop = leave[order[t]] == t ? 1 : 0;
      for (int w : g_.neighbors(order[t]))
        if (pos[w] < t && leave[w] == t) ++drop;
      cur = mid - drop;
    }
    return width;
  }

  std::vector<int> greedy_order() const {
    const int n = g_.n();
    std::vector<int> rem_deg(n), order;
    for (int v = 0; v < n; ++v) rem_deg[v] = g_.degree(v);
    std::vector<char> remaining(n, 1), in_frontier(n, 0);
    int frontier_size = 0;
    for (int step = 0; step < n; ++step) {
      int best = -1, best_size = 1 << 30;
      for (int u = 0; u < n; ++u) {
        if (!remaining[u]) continue;
        int leaves = 0;
        for (int w : g_.neighbors(u))
          if (in_frontier[w] && rem_deg[w] == 1) ++leaves;
        int joins = rem_deg[u] > 0 ? 1 : 0;
        int size = frontier_size - leaves + joins;
        if (size < best_size) {
          best_size = size;
          best = u;
        }
      }
      remaining[best] = 0;
      for (int w : g_.neighbors(best)) {
        --rem_deg[w];
        if (in_frontier[w] && rem_deg[w] == 0) {
          in_frontier[w] = 0;
          --frontier_size;
        }
      }
      if (rem_deg[best] > 0) {
        in_frontier[best] = 1;
        ++frontier_size;
      }
      order.push_back(best);
    }
    return order;
  }

  std::vector<int> bfs_order(int start) const {
    const int n = g_.n();
    std::vector<int> order;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
      int root = s == 0 ? start : s;
      if (seen[root]) continue;
      std::vector<int> queue{root};
      seen[root] = 1;
      for (std::size_t at = 0; at < queue.size(); ++at) {
        int u = queue[at];
        order.push_back(u);
        for (int w : g_.neighbors(u))
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
      }
    }
    return order;
  }

  int farthest_from(int start) const {
    const int n = g_.n();
    std::vector<int> dist(n, -1);
    std::vector<int> queue{start};
    dist[start] = 0;
    int best = start;
    for (std::size_t at = 0; at < queue.size(); ++at) {
      int u = queue[at];
      if (dist[u] > dist[best]) best = u;
      for (int w : g_.neighbors(u))
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    return best;
  }

  // Profile cost favouring narrow frontiers throughout, not just the peak:
  // each level contributes exponentially in its width.
  static double order_cost(const std::vector<int>& widths) {
    double cost = 0;
    for (int w : widths) cost += std::pow(5.0, std::min(w, 26));
    return cost;
  }

  std::vector<int> width_profile(const std::vector<int>& order) const {
    const int n = g_.n();
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[order[t]] = t;
    std::vector<int> leave(n);
    for (int v = 0; v < n; ++v) {
      leave[v] = pos[v];
      for (int w : g_.neighbors(v)) leave[v] = std::max(leave[v], pos[w]);
    }
    std::vector<int> widths(n);
    int cur = 0;
    for (int t = 0; t < n; ++t) {
      int mid = cur + 1;
      widths[t] = mid;
      int drop = leave[order[t]] == t ? 1 : 0;
      for (int w : g_.neighbors(order[t]))
        if (pos[w] < t && leave[w] == t) ++drop;
      cur = mid - drop;
    }
    return widths;
  }

  // Deterministic reinsertion local search. BFS sweeps are good starts but
  // boundary shortcuts (e.g. the chords reductions leave on a ball's outer
  // sphere) mislead them; moving single vertices fixes that reliably.
  void improve_order(std::vector<int>& order) const {
    const int n = g_.n();
    if (n > 400) return;
    double best_cost = order_cost(width_profile(order));
    for (int pass = 0; pass < 40; ++pass) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> base = order;
        base.erase(base.begin() + i);
        int best_j = -1;
        for (int j = 0; j <= n - 1; ++j) {
          std::vector<int> cand = base;
          cand.insert(cand.begin() + j, v);
          double c = order_cost(width_profile(cand));
          if (c + 1e-9 < best_cost) {
            best_cost = c;
            best_j = j;
          }
        }
        if (best_j >= 0) {
          base.insert(base.begin() + best_j, v);
          order = std::move(base);
          improved = true;
        }
      }
      if (!improved) break;
    }
  }

  // A sweep from a peripheral vertex usually beats the myopic greedy on
  // mesh-like hosts; try a few candidates, then refine the narrowest.
  void plan_order() {
    const int n = g_.n();
    std::vector<std::vector<int>> candidates;
    candidates.push_back(greedy_order());
    if (n > 0) {
      int a = farthest_from(0);
      int b = farthest_from(a);
      candidates.push_back(bfs_order(a));
      if (b != a) candidates.push_back(bfs_order(b));
    }
    double best_cost = 1e300;
    for (const auto& cand : candidates) {
      double c = order_cost(width_profile(cand));
      if (c < best_cost) {
        best_cost = c;
        order_ = cand;
      }
    }
    improve_order(order_);
    build_steps();
  }

  void build_steps() {
    const int n = g_.n();
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[order_[t]] = t;
    std::vector<int> leave(n);
    for (int v = 0; v < n; ++v) {
      leave[v] = pos[v];
      for (int w : g_.neighbors(v)) leave[v] = std::max(leave[v], pos[w]);
    }
    steps_.assign(n, {});
    std::vector<int> frontier;
    for (int t = 0; t < n; ++t) {
      StepPlan& sp = steps_[t];
      sp.intro = order_[t];
      sp.prev_frontier = frontier;
      sp.mid_frontier = frontier;
      sp.mid_frontier.insert(
          std::upper_bound(sp.mid_frontier.begin(), sp.mid_frontier.end(), sp.intro),
          sp.intro);
      if (static_cast<int>(sp.mid_frontier.size()) > kMaxSlots + 1) {
        width_exceeded_ = true;
        return;
      }
      sp.v_slot = static_cast<int>(
          std::lower_bound(sp.mid_frontier.begin(), sp.mid_frontier.end(), sp.intro) -
          sp.mid_frontier.begin());
      for (int s = 0; s < static_cast<int>(sp.mid_frontier.size()); ++s)
        if (g_.has_edge(sp.intro, sp.mid_frontier[s])) sp.v_nbr_slots.push_back(s);
      sp.mid_to_post.assign(sp.mid_frontier.size(), -1);
      frontier.clear();
      for (int s = 0; s < static_cast<int>(sp.mid_frontier.size()); ++s) {
        int v = sp.mid_frontier[s];
        if (leave[v] > t) {
          sp.mid_to_post[s] = static_cast<int>(frontier.size());
          frontier.push_back(v);
        }
      }
      sp.post_frontier = frontier;
      if (static_cast<int>(frontier.size()) > kMaxSlots) {
        width_exceeded_ = true;
        return;
      }
    }
    for (int t = 0; t < n; ++t) compute_future_dist(steps_[t], pos, t);
  }

  static constexpr int kFar = 1 << 20;

  void compute_future_dist(StepPlan& sp, const std::vector<int>& pos, int t) const {
    const int slots = static_cast<int>(sp.post_frontier.size());
    sp.future_dist.assign(slots, std::vector<int>(slots, kFar));
    std::vector<int> dist(g_.n());
    std::vector<int> queue;
    for (int s = 0; s < slots; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      queue.clear();
      int src = sp.post_frontier[s];
      dist[src] = 0;
      queue.push_back(src);
      for (std::size_t at = 0; at < queue.size(); ++at) {
        int u = queue[at];
        for (int w : g_.neighbors(u)) {
          if (dist[w] >= 0) continue;
          dist[w] = dist[u] + 1;
          if (pos[w] > t)  // only future vertices may be interior
            queue.push_back(w);
        }
      }
      for (int s2 = 0; s2 < slots; ++s2) {
        int d = dist[sp.post_frontier[s2]];
        if (s2 != s && d >= 0) sp.future_dist[s][s2] = d;
      }
    }
  }

  void build_pattern_tables() {
    edge_bit_.assign(h_, std::vector<int>(h_, -1));
    required_.assign(h_ + 1, 0);
    int bit = 0;
    for (auto [u, v] : pat_.edges()) {
      edge_bit_[u][v] = edge_bit_[v][u] = bit;
      required_[u + 1] |= 1u << bit;
      required_[v + 1] |= 1u << bit;
      ++bit;
    }
    clique_ = is_clique_graph(pat_);
    if (clique_) return;  // rank relabeling handles the full symmetric group

    std::vector<int> perm(h_);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> auts;
    bool too_many = false;
    do {
      bool ok = true;
      for (auto [u, v] : pat_.edges())
        if (!pat_.has_edge(perm[u], perm[v])) {
          ok = false;
          break;
        }
      if (ok) {
        auts.push_back(perm);
        if (auts.size() > 720) {
          too_many = true;
          break;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (too_many) {
      auts.clear();
      std::vector<int> id(h_);
      std::iota(id.begin(), id.end(), 0);
      auts.push_back(id);  // identity alone is still a subgroup
    }
    for (const auto& a : auts) {
      std::vector<std::uint8_t> lbl(h_ + 1);
      lbl[0] = 0;
      for (int p = 0; p < h_; ++p) lbl[p + 1] = static_cast<std::uint8_t>(a[p] + 1);
      aut_label_.push_back(std::move(lbl));
      std::vector<std::uint8_t> ebits(pat_.edge_count());
      for (auto [u, v] : pat_.edges())
        ebits[edge_bit_[u][v]] = static_cast<std::uint8_t>(edge_bit_[a[u]][a[v]]);
      aut_edge_.push_back(std::move(ebits));
    }
  }

  static void decode(const StateKey& key, int slots, std::uint8_t* lab,
                     std::uint8_t* blk, std::uint16_t& closed,
                     std::uint16_t& witness) {
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(key.w.data());
    for (int s = 0; s < slots; ++s) {
      lab[s] = bytes[s] >> 4;
      blk[s] = bytes[s] & 0xf;
    }
    closed = static_cast<std::uint16_t>(bytes[24] | (bytes[25] << 8));
    witness = static_cast<std::uint16_t>(bytes[26] | (bytes[27] << 8));
  }

  static void pack(const std::uint8_t* bytes28, StateKey& out) {
    out = StateKey{};
    std::memcpy(out.w.data(), bytes28, 28);
  }

  // Untranslated encoding, for the parent chains of the reconstruction sweep.
  void encode_plain(int slots, const std::uint8_t* lab, const std::uint8_t* blk,
                    std::uint16_t closed, std::uint16_t witness, StateKey& out) const {
    std::uint8_t bytes[28] = {};
    for (int s = 0; s < slots; ++s)
      bytes[s] = static_cast<std::uint8_t>((lab[s] << 4) | blk[s]);
    bytes[24] = static_cast<std::uint8_t>(closed & 0xff);
    bytes[25] = static_cast<std::uint8_t>(closed >> 8);
    bytes[26] = static_cast<std::uint8_t>(witness & 0xff);
    bytes[27] = static_cast<std::uint8_t>(witness >> 8);
    pack(bytes, out);
  }

  // For cliques every label permutation is an automorphism, so the orbit
  // representative just renames labels: slot labels by first occurrence,
  // then closed labels, then untouched ones.
  void canonize_clique(int slots, const std::uint8_t* lab, const std::uint8_t* blk,
                       std::uint16_t closed, std::uint16_t witness, StateKey& out) const {
    std::uint8_t rank[kMaxPatternVerts + 1];
    std::memset(rank, 0, sizeof rank);
    std::uint8_t next = 1;
    std::uint8_t bytes[28] = {};
    for (int s = 0; s < slots; ++s) {
      int l = lab[s];
      if (l == 0) {
        bytes[s] = blk[s];  // blk is 0 here
        continue;
      }
      if (rank[l] == 0) rank[l] = next++;
      bytes[s] = static_cast<std::uint8_t>((rank[l] << 4) | blk[s]);
    }
    for (int l = 1; l <= h_; ++l)
      if (rank[l] == 0 && (closed & (1u << (l - 1)))) rank[l] = next++;
    for (int l = 1; l <= h_; ++l)
      if (rank[l] == 0) rank[l] = next++;
    std::uint16_t pclosed = 0, pwitness = 0;
    for (int l = 1; l <= h_; ++l)
      if (closed & (1u << (l - 1))) pclosed |= 1u << (rank[l] - 1);
    for (int a = 0; a < h_; ++a)
      for (int b = a + 1; b < h_; ++b)
        if (witness & (1u << edge_bit_[a][b]))
          pwitness |= 1u << edge_bit_[rank[a + 1] - 1][rank[b + 1] - 1];
    bytes[24] = static_cast<std::uint8_t>(pclosed & 0xff);
    bytes[25] = static_cast<std::uint8_t>(pclosed >> 8);
    bytes[26] = static_cast<std::uint8_t>(pwitness & 0xff);
    bytes[27] = static_cast<std::uint8_t>(pwitness >> 8);
    pack(bytes, out);
  }

  // Generic patterns: least encoding over the automorphism group, comparing
  // slot bytes lazily so non-minimal permutations abort early.
  void canonize_generic(int slots, const std::uint8_t* lab, const std::uint8_t* blk,
                        std::uint16_t closed, std::uint16_t witness,
                        StateKey& out) const {
    std::uint8_t best[28], cand[28];
    bool have_best = false;
    const int edge_count = pat_.edge_count();
    for (std::size_t a = 0; a < aut_label_.size(); ++a) {
      const auto& lrename = aut_label_[a];
      bool worse = false;
      bool strictly_better = false;
      for (int s = 0; s < slots; ++s) {
        std::uint8_t byte =
            lab[s] == 0 ? blk[s]
                        : static_cast<std::uint8_t>((lrename[lab[s]] << 4) | blk[s]);
        cand[s] = byte;
        if (have_best && !strictly_better) {
          if (byte > best[s]) {
            worse = true;
            break;
          }
          if (byte < best[s]) strictly_better = true;
        }
      }
      if (worse) continue;
      for (int s = slots; s < kMaxSlots; ++s) cand[s] = 0;
      std::uint16_t pclosed = 0, pwitness = 0;
      for (int l = 1; l <= h_; ++l)
        if (closed & (1u << (l - 1))) pclosed |= 1u << (lrename[l] - 1);
      const auto& emap = aut_edge_[a];
      for (int b = 0; b < edge_count; ++b)
        if (witness & (1u << b)) pwitness |= 1u << emap[b];
      cand[24] = static_cast<std::uint8_t>(pclosed & 0xff);
      cand[25] = static_cast<std::uint8_t>(pclosed >> 8);
      cand[26] = static_cast<std::uint8_t>(pwitness & 0xff);
      cand[27] = static_cast<std::uint8_t>(pwitness >> 8);
      if (!have_best || std::memcmp(cand, best, 28) < 0) {
        std::memcpy(best, cand, 28);
        have_best = true;
      }
    }
    pack(best, out);
  }

  std::int32_t sweep(bool keep_levels, std::uint64_t& expansions) {
    aborted_ = false;
    const int n = g_.n();
    levels_.assign(keep_levels ? n + 1 : 2, {});
    levels_[0].reset(4, &dom_ctx_, keep_levels);
    levels_[0].insert(StateKey{}, StateKey{}, -1, 0);

    const std::uint16_t all_closed = static_cast<std::uint16_t>((1u << h_) - 1);

    std::uint8_t plab[kMaxSlots + 1], pblk[kMaxSlots + 1];
    std::uint8_t lab[kMaxSlots + 1], blk[kMaxSlots + 1];
    std::uint8_t nlab[kMaxSlots + 1], nblk[kMaxSlots + 1];

    for (int t = 0; t < n; ++t) {
      LevelTable& prev = levels_[keep_levels ? t : (t & 1)];
      LevelTable& next = levels_[keep_levels ? t + 1 : ((t + 1) & 1)];
      next.reset(prev.states.size() * 2 + 16, &dom_ctx_, keep_levels);
      const StepPlan& sp = steps_[t];
      const int prev_slots = static_cast<int>(sp.prev_frontier.size());
      const int mid_slots = static_cast<int>(sp.mid_frontier.size());
      const int post_slots = static_cast<int>(sp.post_frontier.size());
      const int remaining_after = n - (t + 1);

      for (std::int32_t si = 0; si < static_cast<std::int32_t>(prev.states.size());
           ++si) {
        if (prev.states[si].dead) continue;
        std::uint16_t closed0, witness0;
        decode(keep_levels ? prev.states[si].raw : prev.states[si].key, prev_slots,
               plab, pblk, closed0, witness0);
        // Mid-slot layout and the reconnection of surviving blocks do not
        // depend on the newcomer's label.
        for (int s = 0; s < prev_slots; ++s) {
          int d = s < sp.v_slot ? s : s + 1;
          lab[d] = plab[s];
          blk[d] = pblk[s];
        }
        blk[sp.v_slot] = 0;
        int base_dsu[kMaxSlots + 1];
        {
          for (int s = 0; s < mid_slots; ++s) base_dsu[s] = s;
          int first_of[kMaxPatternVerts + 1][16];
          for (int l = 1; l <= h_; ++l)
            for (int b = 0; b < 16; ++b) first_of[l][b] = -1;
          for (int s = 0; s < mid_slots; ++s) {
            if (s == sp.v_slot || lab[s] == 0) continue;
            int& f = first_of[lab[s]][blk[s]];
            if (f < 0)
              f = s;
            else
              base_dsu[s] = f;  // blocks arrive canonical, one hop suffices
          }
        }
        for (int L = 0; L <= h_; ++L) {
          if (L > 0 && (closed0 & (1u << (L - 1)))) continue;
          lab[sp.v_slot] = static_cast<std::uint8_t>(L);
          std::uint16_t closed = closed0, witness = witness0;

          int dsu[kMaxSlots + 1];
          std::memcpy(dsu, base_dsu, sizeof(int) * mid_slots);
          auto find = [&](int x) {
            while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
            return x;
          };
          if (L > 0) {
            for (int s : sp.v_nbr_slots) {
              int l2 = lab[s];
              if (l2 == L)
                dsu[find(s)] = find(sp.v_slot);
              else if (l2 > 0) {
                int b = edge_bit_[L - 1][l2 - 1];
                if (b >= 0) witness |= 1u << b;
              }
            }
          }

          // A block losing its last frontier vertex is sealed: it must be the
          // label's whole branch set, finished. Only labels with a forgotten
          // slot can seal.
          bool dead = false;
          bool check_label[kMaxPatternVerts + 1] = {};
          for (int s = 0; s < mid_slots; ++s)
            if (sp.mid_to_post[s] < 0 && lab[s] > 0) check_label[lab[s]] = true;
          for (int l = 1; l <= h_ && !dead; ++l) {
            if (!check_label[l]) continue;
            int roots[kMaxSlots + 1];
            char survives[kMaxSlots + 1];
            int count = 0;
            bool any = false;
            for (int s = 0; s < mid_slots; ++s) {
              if (lab[s] != l) continue;
              any = true;
              int r = find(s);
              int idx = -1;
              for (int k = 0; k < count; ++k)
                if (roots[k] == r) {
                  idx = k;
                  break;
                }
              if (idx < 0) {
                roots[count] = r;
                survives[count] = 0;
                idx = count++;
              }
              if (sp.mid_to_post[s] >= 0) survives[idx] = 1;
            }
            if (!any) continue;
            int orphans = 0, alive = 0;
            for (int k = 0; k < count; ++k)
              (survives[k] ? alive : orphans)++;
            if (orphans > 1 || (orphans == 1 && alive > 0)) {
              dead = true;
            } else if (orphans == 1) {
              if ((witness & required_[l]) != required_[l])
                dead = true;
              else
                closed |= 1u << (l - 1);
            }
          }
          if (dead) continue;

          // Project to post slots; compress DSU roots to per-label block ids.
          std::int8_t next_by_label[kMaxPatternVerts + 1] = {};
          {
            std::int8_t map_root[kMaxSlots + 1];
            for (int s = 0; s < mid_slots; ++s) map_root[s] = -1;
            bool overflow = false;
            for (int s = 0; s < mid_slots; ++s) {
              int d = sp.mid_to_post[s];
              if (d < 0) continue;
              nlab[d] = lab[s];
              if (lab[s] == 0) {
                nblk[d] = 0;
                continue;
              }
              int r = find(s);
              if (map_root[r] < 0) {
                if (next_by_label[lab[s]] >= 16) {
                  overflow = true;
                  break;
                }
                map_root[r] = next_by_label[lab[s]]++;
              }
              nblk[d] = static_cast<std::uint8_t>(map_root[r]);
            }
            if (overflow) {
              aborted_ = true;
              return -1;
            }
          }

          // Future-supply prune. Each unstarted label needs one fresh vertex.
          // For a label split into blocks, any path joining two blocks in the
          // final branch set decomposes into pure-future hops between frontier
          // slots, so shortest paths in the small slot graph (0 inside a
          // block, future-distance minus 1 across) bound the label's future
          // consumption from below; labels consume disjoint vertex sets.
          {
            int needed = 0;
            bool dead_merge = false;
            // The slot-graph analysis only bites near the end of the sweep.
            const bool analyze_merges = remaining_after <= 2 * post_slots + 4;
            for (int l = 1; l <= h_ && !dead_merge; ++l) {
              if (next_by_label[l] == 0) {
                if (!(closed & (1u << (l - 1)))) ++needed;
                continue;
              }
              if (next_by_label[l] < 2 || !analyze_merges) continue;
              int sl[kMaxSlots], nsl = 0;
              for (int d = 0; d < post_slots; ++d)
                if (nlab[d] == l) sl[nsl++] = d;
              int w[kMaxSlots][kMaxSlots];
              for (int a = 0; a < nsl; ++a)
                for (int b = 0; b < nsl; ++b) {
                  if (a == b)
                    w[a][b] = 0;
                  else if (nblk[sl[a]] == nblk[sl[b]])
                    w[a][b] = 0;
                  else
                    w[a][b] =
                        std::min(sp.future_dist[sl[a]][sl[b]] - 1, kFar);
                }
              for (int c = 0; c < nsl; ++c)
                for (int a = 0; a < nsl; ++a)
                  for (int b = 0; b < nsl; ++b)
                    w[a][b] = std::min(w[a][b], w[a][c] + w[c][b]);
              int need_l = 0;
              for (int a = 0; a < nsl; ++a)
                for (int b = a + 1; b < nsl; ++b)
                  if (nblk[sl[a]] != nblk[sl[b]]) need_l = std::max(need_l, w[a][b]);
              if (need_l >= kFar) {
                dead_merge = true;
                break;
              }
              needed += need_l;
            }
            if (dead_merge || needed > remaining_after) continue;
          }

          StateKey key, raw;
          if (clique_)
            canonize_clique(post_slots, nlab, nblk, closed, witness, key);
          else
            canonize_generic(post_slots, nlab, nblk, closed, witness, key);
          if (keep_levels) encode_plain(post_slots, nlab, nblk, closed, witness, raw);
          if (next.insert(key, raw, si, static_cast<std::int8_t>(L))) {
            if (++expansions > budget_ ||
                next.states.size() > kMaxStatesPerLevel) {
              aborted_ = true;
              return -1;
            }
          }
        }
      }
      if (std::getenv("CAYMIN_DP_STATS"))
        std::cerr << "dp level " << t + 1 << "/" << n << ": " << next.states.size()
                  << " states (frontier " << sp.post_frontier.size() << ")\n";
      if (next.states.empty()) return -1;
    }

    LevelTable& last = levels_[keep_levels ? n : (n & 1)];
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(last.states.size()); ++i) {
      if (last.states[i].dead) continue;
      if (key_closed(last.states[i].key) == all_closed) return i;
    }
    return -1;
  }

  MinorEmbedding reconstruct(std::int32_t accept) {
    const int n = g_.n();
    std::vector<int> label_of(n, 0);
    std::int32_t at = accept;
    for (int t = n; t >= 1; --t) {
      const StateRec& rec = levels_[t].states[at];
      label_of[steps_[t - 1].intro] = rec.label;
      at = rec.parent;
    }
    MinorEmbedding emb;
    emb.pattern = pat_;
    emb.branch_sets.resize(h_);
    for (int v = 0; v < n; ++v)
      if (label_of[v] > 0) emb.branch_sets[label_of[v] - 1].push_back(v);
    for (auto [pu, pv] : pat_.edges())
      for (auto [u, v] : g_.edges()) {
        int lu = label_of[u], lv = label_of[v];
        if ((lu == pu + 1 && lv == pv + 1) || (lu == pv + 1 && lv == pu + 1)) {
          emb.edge_witness[{pu, pv}] = {u, v};
          break;
        }
      }
    return emb;
  }

  const Graph& g_;
  const Graph& pat_;
  std::uint64_t budget_;
  int h_ = 0;
  bool clique_ = false;
  bool width_exceeded_ = false;
  bool aborted_ = false;
  std::vector<int> order_;
  std::vector<StepPlan> steps_;
  std::vector<std::vector<int>> edge_bit_;
  std::vector<std::uint16_t> required_;
  std::vector<std::vector<std::uint8_t>> aut_label_;
  std::vector<std::vector<std::uint8_t>> aut_edge_;
  DomContext dom_ctx_;
  std::vector<LevelTable> levels_;
};

}  // namespace

EngineOutcome run_frontier_dp(const Graph& host, const Graph& pattern,
                              std::uint64_t budget) {
  return FrontierDp(host, pattern, budget).run();
}

}  // namespace caymin::detail
