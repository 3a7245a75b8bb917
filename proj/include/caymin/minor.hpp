#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caymin/graph.hpp"

namespace caymin {

// Witness that `pattern` is a minor of some host graph: one branch set per
// pattern vertex plus, for each pattern edge, a host edge joining the two
// branch sets.
struct MinorEmbedding {
  Graph pattern;
  std::vector<std::vector<int>> branch_sets;
  std::map<std::pair<int, int>, std::pair<int, int>> edge_witness;
};

// Checks the three branch-set invariants against the host: pairwise disjoint,
// each inducing a connected subgraph, every pattern edge carried by its
// witness host edge (either orientation). Polynomial time. Throws
// IndexOutOfBoundsError for certificates referring outside the host.
bool verify_embedding(const Graph& host, const MinorEmbedding& emb);

enum class SearchStatus { Found, Absent, BudgetExhausted };

const char* to_string(SearchStatus s);

struct MinorSearchResult {
  SearchStatus status = SearchStatus::Absent;
  std::optional<MinorEmbedding> embedding;
  std::uint64_t expansions = 0;
};

// Budget unit is search-node expansions (backtracking nodes plus dynamic
// programming state insertions), never wall time, so verdicts are
// reproducible across machines.
inline constexpr std::uint64_t kDefaultSearchBudget = 20'000'000;
inline constexpr std::uint64_t kUnlimitedBudget = UINT64_MAX;

enum class SearchStrategy { Auto, GrowthOnly, DpOnly };

// Exact minor containment. Found results always verify; Absent means the
// search space was exhausted. Deterministic for identical inputs.
MinorSearchResult find_minor(const Graph& host, const Graph& pattern,
                             std::uint64_t budget = kDefaultSearchBudget,
                             SearchStrategy strategy = SearchStrategy::Auto);

MinorSearchResult find_clique_minor(const Graph& host, int m,
                                    std::uint64_t budget = kDefaultSearchBudget);

struct HadwigerResult {
  int m = 0;
  std::optional<MinorEmbedding> embedding;
  // Verdict of the failed (m+1)-search: Absent makes m the exact Hadwiger
  // number, BudgetExhausted makes it a lower bound.
  SearchStatus ceiling_status = SearchStatus::Absent;
};

// Largest m with a certified K_m minor found within budget.
HadwigerResult hadwiger_lower_bound(const Graph& host,
                                    std::uint64_t budget = kDefaultSearchBudget);

enum class PlanarityStatus { Planar, NonPlanar, BudgetExhausted };

const char* to_string(PlanarityStatus s);

struct PlanarityResult {
  PlanarityStatus status = PlanarityStatus::Planar;
  std::optional<MinorEmbedding> witness;
  std::string witness_pattern;  // "K5" or "K3,3"
};

// Planarity by exclusion-minor search: Planar only when exact searches prove
// both K5 and K3,3 absent; NonPlanar always carries a verified witness (the
// |E| > 3n-6 density shortcut still runs the witness search).
PlanarityResult is_planar(const Graph& host,
                          std::uint64_t budget = kDefaultSearchBudget);

// Independent testing oracle: exhaustive enumeration of host-vertex
// assignments to branch sets (mask based), no shared machinery with
// find_minor. Hosts capped at 12 vertices (HostTooLargeError above).
bool brute_force_minor(const Graph& host, const Graph& pattern);

namespace detail {

// Safe host reductions for patterns of min degree >= 2 (delete degree <= 1)
// and >= 3 (additionally suppress degree-2 vertices). Containment of such
// patterns is preserved in both directions; suppressed paths are remembered
// so certificates can be lifted back to the original host.
struct Reduction {
  Graph reduced;
  std::vector<int> orig_of;  // reduced index -> original index
  // reduced edge (u<v, reduced indices) -> interior original vertices, in
  // order from orig_of[u] to orig_of[v]. Missing key = original edge.
  std::map<std::pair<int, int>, std::vector<int>> hidden;
};

Reduction reduce_host(const Graph& host, int pattern_min_degree);

MinorEmbedding lift_embedding(const Graph& original, const Reduction& red,
                              const MinorEmbedding& emb);

}  // namespace detail

}  // namespace caymin
