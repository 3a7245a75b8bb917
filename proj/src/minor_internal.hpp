#pragma once

#include <cstdint>
#include <optional>

#include "caymin/graph.hpp"
#include "caymin/minor.hpp"

namespace caymin::detail {

struct EngineOutcome {
  SearchStatus status = SearchStatus::Absent;
  std::optional<MinorEmbedding> embedding;
  std::uint64_t expansions = 0;
};

// Backtracking search that grows branch sets vertex by vertex (pattern
// vertices in descending-degree order, min-vertex rooted sets, increasing
// roots for clique patterns). Complete when it terminates within budget.
EngineOutcome run_growth_finder(const Graph& host, const Graph& pattern,
                                std::uint64_t budget);

// Exact decision by dynamic programming over a greedy elimination order:
// states are frontier labelings with per-label connectivity blocks, closed
// labels and witnessed pattern edges, canonized under pattern automorphisms.
// Budget counts state insertions. Refuses frontiers wider than 24 slots or
// patterns with more than 12 vertices / 16 edges (reported as
// BudgetExhausted).
EngineOutcome run_frontier_dp(const Graph& host, const Graph& pattern,
                              std::uint64_t budget);

}  // namespace caymin::detail
