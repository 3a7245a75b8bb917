#include "caymin/minor.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "caymin/errors.hpp"
#include "minor_internal.hpp"

namespace caymin {

namespace {

// The growth finder is a good *finder* but a slow exhaustive prover, so Auto
// gives it a bounded share of the budget before handing the absence question
// to the frontier DP.
constexpr std::uint64_t kFinderShare = 200'000;

MinorSearchResult lift_and_check(const Graph& host, const detail::Reduction& red,
                                 detail::EngineOutcome&& eng, std::uint64_t used) {
  MinorSearchResult res;
  res.status = eng.status;
  res.expansions = used + eng.expansions;
  if (eng.status == SearchStatus::Found) {
    MinorEmbedding lifted = detail::lift_embedding(host, red, *eng.embedding);
    if (!verify_embedding(host, lifted))
      throw Error("internal error: search produced a certificate that fails verification");
    res.embedding = std::move(lifted);
  }
  return res;
}

}  // namespace

MinorSearchResult find_minor(const Graph& host, const Graph& pattern,
                             std::uint64_t budget, SearchStrategy strategy) {
  if (pattern.n() == 0) throw ParseError("find_minor: pattern must be nonempty");
  if (pattern.n() > 32) throw ParseError("find_minor: patterns are capped at 32 vertices");

  if (strategy == SearchStrategy::GrowthOnly) {
    auto eng = detail::run_growth_finder(host, pattern, budget);
    MinorSearchResult res;
    res.status = eng.status;
    res.expansions = eng.expansions;
    if (eng.embedding) {
      if (!verify_embedding(host, *eng.embedding))
        throw Error("internal error: growth finder certificate fails verification");
      res.embedding = std::move(eng.embedding);
    }
    return res;
  }
  if (strategy == SearchStrategy::DpOnly) {
    auto eng = detail::run_frontier_dp(host, pattern, budget);
    MinorSearchResult res;
    res.status = eng.status;
    res.expansions = eng.expansions;
    if (eng.embedding) {
      if (!verify_embedding(host, *eng.embedding))
        throw Error("internal error: dp certificate fails verification");
      res.embedding = std::move(eng.embedding);
    }
    return res;
  }

  MinorSearchResult res;
  if (host.n() < pattern.n()) return res;  // Absent, zero expansions

  detail::Reduction red = detail::reduce_host(host, pattern.min_degree());
  if (red.reduced.n() < pattern.n()) return res;

  std::uint64_t finder_budget = std::min(budget, kFinderShare);
  auto finder = detail::run_growth_finder(red.reduced, pattern, finder_budget);
  std::uint64_t used = finder.expansions;
  if (finder.status != SearchStatus::BudgetExhausted)
    return lift_and_check(host, red, std::move(finder), 0);

  std::uint64_t dp_budget = budget > used ? budget - used : 0;
  auto dp = detail::run_frontier_dp(red.reduced, pattern, dp_budget);
  if (dp.status == SearchStatus::BudgetExhausted && dp.expansions == 0) {
    // The DP refused the instance (frontier or pattern too wide); fall back
    // to the exhaustive growth search with everything that is left.
    auto full = detail::run_growth_finder(red.reduced, pattern,
                                          budget > used ? budget - used : 0);
    return lift_and_check(host, red, std::move(full), used);
  }
  return lift_and_check(host, red, std::move(dp), used);
}

MinorSearchResult find_clique_minor(const Graph& host, int m, std::uint64_t budget) {
  if (m < 1) throw ParseError("find_clique_minor: m must be >= 1");
  return find_minor(host, Graph::clique(m), budget);
}

HadwigerResult hadwiger_lower_bound(const Graph& host, std::uint64_t budget) {
  if (host.n() == 0) throw ParseError("hadwiger_lower_bound: host must be nonempty");
  HadwigerResult out;
  out.m = 1;
  MinorEmbedding triv;
  triv.pattern = Graph::clique(1);
  triv.branch_sets = {{0}};
  out.embedding = triv;
  for (int m = 2;; ++m) {
    if (m > host.n()) {
      out.ceiling_status = SearchStatus::Absent;
      break;
    }
    auto res = find_clique_minor(host, m, budget);
    if (res.status == SearchStatus::Found) {
      out.m = m;
      out.embedding = std::move(res.embedding);
    } else {
      out.ceiling_status = res.status;
      break;
    }
  }
  return out;
}

PlanarityResult is_planar(const Graph& host, std::uint64_t budget) {
  // Dense graphs (|E| > 3n-6) are never planar, but any NonPlanar report must
  // still carry a verified witness, so the searches below run either way.
  PlanarityResult out;
  auto k5 = find_minor(host, Graph::clique(5), budget);
  if (k5.status == SearchStatus::Found) {
    out.status = PlanarityStatus::NonPlanar;
    out.witness = std::move(k5.embedding);
    out.witness_pattern = "K5";
    return out;
  }
  auto k33 = find_minor(host, Graph::complete_bipartite(3, 3), budget);
  if (k33.status == SearchStatus::Found) {
    out.status = PlanarityStatus::NonPlanar;
    out.witness = std::move(k33.embedding);
    out.witness_pattern = "K3,3";
    return out;
  }
  if (k5.status == SearchStatus::Absent && k33.status == SearchStatus::Absent)
    out.status = PlanarityStatus::Planar;
  else
    out.status = PlanarityStatus::BudgetExhausted;
  return out;
}

// ---- independent oracle ------------------------------------------------------

namespace {

bool mask_connected(const std::vector<std::uint32_t>& adj, std::uint32_t mask) {
  if (mask == 0) return false;
  std::uint32_t start = mask & (~mask + 1);
  std::uint32_t seen = start, frontier = start;
  while (frontier) {
    std::uint32_t next = 0;
    std::uint32_t f = frontier;
    while (f) {
      int v = __builtin_ctz(f);
      f &= f - 1;
      next |= adj[v] & mask & ~seen;
    }
    seen |= next;
    frontier = next;
  }
  return seen == mask;
}

struct OracleCtx {
  const Graph& pat;
  std::vector<std::uint32_t> subsets;   // connected subsets
  std::vector<std::uint32_t> nbr;       // neighbor mask per subset
  int host_n = 0;
  // i > 0 and ordered_after[i] = j >= 0: pattern vertices j and i are
  // interchangeable, so the enumeration may force low(S_j) < low(S_i).
  std::vector<int> ordered_after;
  std::vector<std::uint32_t> chosen;
  std::vector<std::uint32_t> chosen_nbr;
};

bool oracle_rec(OracleCtx& ctx, int i, std::uint32_t used) {
  if (i == ctx.pat.n()) return true;
  if (ctx.host_n - __builtin_popcount(used) < ctx.pat.n() - i) return false;
  for (std::size_t s = 0; s < ctx.subsets.size(); ++s) {
    std::uint32_t mask = ctx.subsets[s];
    if (mask & used) continue;
    int anchor = ctx.ordered_after[i];
    if (anchor >= 0) {
      std::uint32_t prev_low = ctx.chosen[anchor] & (~ctx.chosen[anchor] + 1);
      std::uint32_t low = mask & (~mask + 1);
      if (low <= prev_low) continue;
    }
    bool ok = true;
    for (int j = 0; j < i && ok; ++j)
      if (ctx.pat.has_edge(j, i) && !(ctx.nbr[s] & ctx.chosen[j])) ok = false;
    if (!ok) continue;
    ctx.chosen[i] = mask;
    ctx.chosen_nbr[i] = ctx.nbr[s];
    if (oracle_rec(ctx, i + 1, used | mask)) return true;
  }
  return false;
}

// Interchangeability pairs justified by pattern automorphisms: consecutive
// clique vertices; consecutive vertices with identical neighborhoods
// (same part of a complete bipartite pattern); and, for two equal
// contiguous twin-classes that an automorphism swaps, the class leaders.
std::vector<int> oracle_symmetry(const Graph& pat) {
  const int h = pat.n();
  std::vector<int> out(h, -1);
  if (is_clique_graph(pat)) {
    for (int i = 1; i < h; ++i) out[i] = i - 1;
    return out;
  }
  std::vector<std::uint32_t> nb(h, 0);
  for (auto [u, v] : pat.edges()) {
    nb[u] |= 1u << v;
    nb[v] |= 1u << u;
  }
  for (int i = 1; i < h; ++i)
    if (nb[i] == nb[i - 1]) out[i] = i - 1;  // non-adjacent twins
  // complete bipartite with equal contiguous parts: swapping the parts is an
  // automorphism, so the two part leaders are comparable as well
  if (h % 2 == 0) {
    int a = h / 2;
    bool split = true;
    for (int i = 1; i < a && split; ++i) split = nb[i] == nb[0];
    for (int i = a + 1; i < h && split; ++i) split = nb[i] == nb[a];
    if (split && nb[0] == ((1u << h) - 1) - ((1u << a) - 1) &&
        nb[a] == (1u << a) - 1 && out[a] == -1)
      out[a] = 0;
  }
  return out;
}

}  // namespace

bool brute_force_minor(const Graph& host, const Graph& pattern) {
  if (host.n() > 12)
    throw HostTooLargeError("brute_force_minor hosts are capped at 12 vertices");
  if (pattern.n() == 0) throw ParseError("brute_force_minor: pattern must be nonempty");
  const int n = host.n();
  if (pattern.n() > n) return false;

  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : host.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  OracleCtx ctx{pattern, {}, {}, n, oracle_symmetry(pattern), {}, {}};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
    if (mask_connected(adj, mask)) {
      std::uint32_t nb = 0;
      std::uint32_t m = mask;
      while (m) {
        int v = __builtin_ctz(m);
        m &= m - 1;
        nb |= adj[v];
      }
      ctx.subsets.push_back(mask);
      ctx.nbr.push_back(nb & ~mask);
    }
  ctx.chosen.assign(pattern.n(), 0);
  ctx.chosen_nbr.assign(pattern.n(), 0);
  return oracle_rec(ctx, 0, 0);
}

}  // namespace caymin
