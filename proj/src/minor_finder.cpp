#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "minor_internal.hpp"

namespace caymin::detail {

namespace {

enum class Step { Found, Exhausted, Budget };

// Branch sets are grown one pattern vertex at a time. Each set is enumerated
// as a connected superset of its root with only larger-indexed vertices, so
// every set is produced exactly once (rooted at its minimum); for clique
// patterns the roots are forced increasing, which quotients out the pattern
// symmetry. At every node the set may close (if its edges to all earlier sets
// are realized) or grow by one adjacent free vertex; skipped candidates are
// banned below that node, the standard duplicate-free connected-subgraph
// scheme.
class GrowthFinder {
 public:
  GrowthFinder(const Graph& host, const Graph& pattern, std::uint64_t budget)
      : g_(host), pat_(pattern), budget_(budget) {
    h_ = pat_.n();
    order_.resize(h_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return pat_.degree(a) > pat_.degree(b);
    });
    slot_of_.assign(h_, -1);
    for (int t = 0; t < h_; ++t) slot_of_[order_[t]] = t;
    required_.assign(h_, 0);
    future_need_.assign(h_, 0);
    for (int t = 0; t < h_; ++t)
      for (int p : pat_.neighbors(order_[t])) {
        int s = slot_of_[p];
        if (s < t)
          required_[t] |= 1u << s;
        else
          ++future_need_[t];
      }
    clique_ = is_clique_graph(pat_) && h_ >= 2;
    who_.assign(g_.n(), -1);
    banned_.assign(g_.n(), 0);
    seen_.assign(g_.n(), 0);
    scratch_.resize(g_.n() + 2);  // one frame per growth depth, never moved
    sets_.resize(h_);
    roots_.assign(h_, -1);
    free_count_ = g_.n();
  }

  EngineOutcome run() {
    EngineOutcome out;
    if (h_ == 0 || g_.n() < h_) {
      out.status = SearchStatus::Absent;
      return out;
    }
    Step st = solve(0);
    out.expansions = expansions_;
    switch (st) {
      case Step::Found:
        out.status = SearchStatus::Found;
        out.embedding = std::move(solution_);
        break;
      case Step::Exhausted:
        out.status = SearchStatus::Absent;
        break;
      case Step::Budget:
        out.status = SearchStatus::BudgetExhausted;
        break;
    }
    return out;
  }

 private:
  bool spend() {
    ++expansions_;
    if (budget_ == 0) return false;
    --budget_;
    return true;
  }

  std::uint32_t touch_mask(int w, int t) const {
    std::uint32_t mask = 0;
    for (int u : g_.neighbors(w)) {
      int s = who_[u];
      if (s >= 0 && s < t) mask |= 1u << s;
    }
    return mask;
  }

  bool future_ok(int t) {
    if (future_need_[t] == 0) return true;
    ++stamp_;
    int fresh = 0;
    for (int u : sets_[t])
      for (int w : g_.neighbors(u))
        if (who_[w] == -1 && seen_[w] != stamp_) {
          seen_[w] = stamp_;
          if (++fresh >= future_need_[t]) return true;
        }
    return false;
  }

  Step solve(int t) {
    if (!spend()) return Step::Budget;
    if (t == h_) {
      record_solution();
      return Step::Found;
    }
    if (free_count_ < h_ - t) return Step::Exhausted;
    for (int v = 0; v < g_.n(); ++v) {
      if (who_[v] != -1) continue;
      if (clique_ && t > 0 && v <= roots_[t - 1]) continue;
      roots_[t] = v;
      who_[v] = t;
      sets_[t] = {v};
      --free_count_;
      Step st = grow(t, touch_mask(v, t));
      who_[v] = -1;
      sets_[t].clear();
      ++free_count_;
      if (st != Step::Exhausted) return st;
    }
    return Step::Exhausted;
  }

  Step grow(int t, std::uint32_t sat) {
    if (!spend()) return Step::Budget;
    if ((sat & required_[t]) == required_[t] && future_ok(t)) {
      Step st = solve(t + 1);
      if (st != Step::Exhausted) return st;
    }
    // Candidates: free unbanned neighbors of the set above the root.
    std::vector<int>& cands = scratch_[depth_].cands;
    std::vector<int>& banned_here = scratch_[depth_].banned;
    ++depth_;
    cands.clear();
    banned_here.clear();
    for (int u : sets_[t])
      for (int w : g_.neighbors(u))
        if (who_[w] == -1 && w > roots_[t] && !(banned_[w] & (1u << t)))
          cands.push_back(w);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    Step result = Step::Exhausted;
    for (int w : cands) {
      if (free_count_ - 1 < h_ - t - 1) break;
      who_[w] = t;
      sets_[t].push_back(w);
      --free_count_;
      Step st = grow(t, sat | touch_mask(w, t));
      who_[w] = -1;
      sets_[t].pop_back();
      ++free_count_;
      if (st != Step::Exhausted) {
        result = st;
        break;
      }
      banned_[w] |= 1u << t;
      banned_here.push_back(w);
    }
    for (int w : banned_here) banned_[w] &= ~(1u << t);
    --depth_;
    return result;
  }

  void record_solution() {
    MinorEmbedding emb;
    emb.pattern = pat_;
    emb.branch_sets.resize(h_);
    for (int t = 0; t < h_; ++t) {
      emb.branch_sets[order_[t]] = sets_[t];
      std::sort(emb.branch_sets[order_[t]].begin(), emb.branch_sets[order_[t]].end());
    }
    std::vector<int> owner(g_.n(), -1);
    for (int p = 0; p < h_; ++p)
      for (int v : emb.branch_sets[p]) owner[v] = p;
    for (auto [pu, pv] : pat_.edges()) {
      bool done = false;
      for (int v : emb.branch_sets[pu]) {
        for (int w : g_.neighbors(v))
          if (owner[w] == pv) {
            emb.edge_witness[{pu, pv}] = {v, w};
            done = true;
            break;
          }
        if (done) break;
      }
    }
    solution_ = std::move(emb);
  }

  const Graph& g_;
  const Graph& pat_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  int h_ = 0;
  bool clique_ = false;
  std::vector<int> order_, slot_of_, roots_;
  std::vector<std::uint32_t> required_;
  std::vector<int> future_need_;
  std::vector<int> who_;
  std::vector<std::uint32_t> banned_;
  std::vector<int> seen_;
  int stamp_ = 0;
  struct Scratch {
    std::vector<int> cands;
    std::vector<int> banned;
  };
  std::vector<Scratch> scratch_;
  int depth_ = 0;
  std::vector<std::vector<int>> sets_;
  int free_count_ = 0;
  std::optional<MinorEmbedding> solution_;
};

}  // namespace

EngineOutcome run_growth_finder(const Graph& host, const Graph& pattern,
                                std::uint64_t budget) {
  return GrowthFinder(host, pattern, budget).run();
}

}  // namespace caymin::detail
