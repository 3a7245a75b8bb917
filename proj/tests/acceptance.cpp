// Acceptance suite: one pass/fail line per criterion. Criteria that name CLI
// commands spawn the caymin binary (path in argv[1]); the rest drive the
// library directly. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "caymin/ball.hpp"
#include "caymin/construct.hpp"
#include "caymin/ends.hpp"
#include "caymin/graph.hpp"
#include "caymin/group.hpp"
#include "caymin/io.hpp"
#include "caymin/minor.hpp"
#include "test_util.hpp"

using namespace caymin;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliResult {
  int exit_code = -1;
  Json json;
  bool parsed = false;
};

CliResult run_cli(const std::string& args) {
  CliResult out;
  std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
  int status = pclose(pipe);
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  try {
    out.json = Json::parse(text);
    out.parsed = true;
  } catch (...) {
  }
  return out;
}

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
  auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double dt = seconds_since(t0);
  char line[512];
  std::snprintf(line, sizeof line, "[%s] criterion %d: %s (%.1fs)%s%s",
                ok ? "PASS" : "FAIL", number, label.c_str(), dt,
                detail.empty() ? "" : " -- ", detail.c_str());
  std::cout << line << std::endl;
  if (!ok) ++g_failures;
}

Graph ball_graph(std::shared_ptr<const GroupModel> model, const GenSet& gens, int r) {
  return induced_graph(build_ball(std::move(model), gens, r));
}

}  // namespace

// 1. K5 found in Cay(Z5, all) with a verified certificate; K4 exactly absent
//    and planarity affirmed for Cay(Z5, {+-1}); all through the CLI, < 1 s.
static void criterion1() {
  criterion(1, "Z5 dichotomy via CLI", [](std::string& detail) {
    auto t0 = Clock::now();
    CliResult found = run_cli("minor --group cyclic:5 --gens all --radius 1 --pattern k:5");
    CliResult absent = run_cli("minor --group cyclic:5 --gens 1 --radius 2 --pattern k:4");
    CliResult planar = run_cli("planar --group cyclic:5 --gens 1 --radius 2");
    double dt = seconds_since(t0);
    if (!found.parsed || !absent.parsed || !planar.parsed) {
      detail = "CLI output did not parse";
      return false;
    }
    if (found.json["status"] != "found") {
      detail = "K5 not found in Cay(Z5, all)";
      return false;
    }
    auto z5 = GroupModel::cyclic(5);
    Graph host = ball_graph(z5, make_gen_set(*z5, {"1", "2"}), 1);
    if (!verify_embedding(host, embedding_from_json(found.json["certificate"]))) {
      detail = "K5 certificate failed verification";
      return false;
    }
    if (absent.json["status"] != "absent") {
      detail = "K4 not proven absent in the 5-cycle";
      return false;
    }
    if (planar.json["status"] != "planar") {
      detail = "Cay(Z5,{+-1}) not reported planar";
      return false;
    }
    if (found.exit_code != 0 || absent.exit_code != 0 || planar.exit_code != 0) {
      detail = "nonzero exit on a semantic verdict";
      return false;
    }
    if (dt >= 1.0) {
      detail = "took " + std::to_string(dt) + "s, limit 1s";
      return false;
    }
    return true;
  });
}

// 2. The radius-6 standard Z^2 ball is planar by exact K5 and K3,3 exclusion
//    under the default budget, in under 5 minutes.
static void criterion2() {
  criterion(2, "Z^2 radius-6 planarity, exact, default budget", [](std::string& detail) {
    auto t0 = Clock::now();
    CliResult res = run_cli("planar --group z^2 --radius 6");
    double dt = seconds_since(t0);
    if (!res.parsed || res.json["status"] != "planar") {
      detail = "expected a planar verdict";
      return false;
    }
    if (dt >= 300.0) {
      detail = "took " + std::to_string(dt) + "s, limit 300s";
      return false;
    }
    return true;
  });
}

// 3. Tree balls exclude K3 exactly; the Hadwiger lower bound stops at 2.
static void criterion3() {
  criterion(3, "tree exclusion for free(2) and Z2*Z2*Z2", [](std::string& detail) {
    auto f2 = GroupModel::free_group(2);
    Graph tree1 = ball_graph(f2, make_gen_set(*f2, {"a", "b"}), 6);
    auto c2 = std::vector<std::vector<int>>{{0, 1}, {1, 0}};
    auto prod = GroupModel::free_product({c2, c2, c2});
    Graph tree2 = ball_graph(prod, make_gen_set(*prod, {"a", "b", "c"}), 6);
    for (const Graph* tree : {&tree1, &tree2}) {
      auto k3 = find_clique_minor(*tree, 3);
      if (k3.status != SearchStatus::Absent) {
        detail = "K3 not proven absent in a tree ball";
        return false;
      }
      auto hadwiger = hadwiger_lower_bound(*tree);
      if (hadwiger.m != 2 || hadwiger.ceiling_status != SearchStatus::Absent) {
        detail = "Hadwiger bound of a tree is not exactly 2";
        return false;
      }
    }
    return true;
  });
}

// 4. The construction emits verified K_m certificates in the boosted balls for
//    m = 4, 5, 6, deterministically, each run < 2 min; the un-boosted balls
//    never yield those cliques.
static void criterion4() {
  criterion(4, "ray-to-clique construction m=4,5,6", [](std::string& detail) {
    struct Case {
      int m, radius;
    } cases[] = {{4, 24}, {5, 36}, {6, 48}};
    for (auto [m, radius] : cases) {
      std::string base = "c4_m" + std::to_string(m);
      std::string args = "construct --group z^2 --m " + std::to_string(m) +
                         " --radius " + std::to_string(radius) + " --out-cert " + base +
                         ".cert.json --out-graph " + base + ".graph.json";
      auto t0 = Clock::now();
      CliResult first = run_cli(args);
      double dt = seconds_since(t0);
      if (!first.parsed || first.exit_code != 0 || first.json.value("verified", false) != true) {
        detail = "construct failed for m=" + std::to_string(m);
        return false;
      }
      if (dt >= 120.0) {
        detail = "construct m=" + std::to_string(m) + " took " + std::to_string(dt) + "s";
        return false;
      }
      Graph boosted = graph_from_json(load_json_file(base + ".graph.json"));
      MinorEmbedding emb = embedding_from_json(load_json_file(base + ".cert.json"));
      if (!verify_embedding(boosted, emb)) {
        detail = "certificate failed verify_embedding for m=" + std::to_string(m);
        return false;
      }
      CliResult reverify =
          run_cli("verify --graph " + base + ".graph.json --cert " + base + ".cert.json");
      if (!reverify.parsed || reverify.json.value("valid", false) != true) {
        detail = "CLI verify rejected the emitted certificate";
        return false;
      }
      CliResult second = run_cli(args);
      if (!second.parsed || second.json["certificate"] != first.json["certificate"]) {
        detail = "construction is not deterministic for m=" + std::to_string(m);
        return false;
      }
    }
    // contrast: the same cliques stay out of reach in the un-boosted balls
    auto z2 = GroupModel::free_abelian(2);
    GenSet s = make_gen_set(*z2, {"e1", "e2"});
    for (auto [m, radius] : {std::pair{5, 36}, std::pair{6, 48}}) {
      auto res = find_clique_minor(ball_graph(z2, s, radius), m, 1'000'000);
      if (res.status == SearchStatus::Found) {
        detail = "K" + std::to_string(m) + " unexpectedly found in the un-boosted ball";
        return false;
      }
    }
    return true;
  });
}

// 5. End counts across the model families, and thin-end sizes of 1 for both
//    ends of Z and of the infinite dihedral group.
static void criterion5() {
  criterion(5, "ends table and thin-end sizes", [](std::string& detail) {
    auto z5 = GroupModel::cyclic(5);
    if (end_count_estimate(z5, make_gen_set(*z5, {"1"}), 1, 3) != 0) {
      detail = "Z5 should have 0 live components at R=3";
      return false;
    }
    auto z = GroupModel::free_abelian(1);
    GenSet zs = make_gen_set(*z, {"1"});
    if (end_count_estimate(z, zs, 1, 6) != 2) {
      detail = "Z should have 2 live components";
      return false;
    }
    auto c2 = std::vector<std::vector<int>>{{0, 1}, {1, 0}};
    auto dihedral = GroupModel::free_product({c2, c2});
    GenSet ds = make_gen_set(*dihedral, {"a", "b"});
    if (end_count_estimate(dihedral, ds, 1, 6) != 2) {
      detail = "the infinite dihedral group should have 2 live components";
      return false;
    }
    auto z2 = GroupModel::free_abelian(2);
    GenSet s2 = make_gen_set(*z2, {"e1", "e2"});
    Ball plane = build_ball(z2, s2, 8);
    for (int r = 1; r <= 6; ++r)
      if (live_components(plane, r).live_count != 1) {
        detail = "Z^2 should stay one-ended at r=" + std::to_string(r);
        return false;
      }
    auto f2 = GroupModel::free_group(2);
    Ball tree = build_ball(f2, make_gen_set(*f2, {"a", "b"}), 4);
    if (live_components(tree, 1).live_count < 4) {
      detail = "free(2) should show at least 4 live components";
      return false;
    }
    Ball line = build_ball(z, zs, 6);
    Ball dline = build_ball(dihedral, ds, 6);
    for (const Ball* b : {&line, &dline})
      for (int c = 0; c < 2; ++c)
        if (thin_end_size_at_scale(*b, 1, c) != 1) {
          detail = "a two-ended line should have thin-end size 1";
          return false;
        }
    return true;
  });
}

// 6. find_minor with unlimited budget matches the independent oracle on all
//    connected hosts with <= 7 vertices and on 200 seeded random hosts.
static void criterion6() {
  criterion(6, "oracle equivalence (exhaustive <=7, 200 random <=10)", [](std::string& detail) {
    std::vector<Graph> patterns{Graph::clique(3), Graph::clique(4), Graph::clique(5),
                                Graph::complete_bipartite(3, 3)};
    long long checked = 0;
    for (int n = 1; n <= 7; ++n) {
      int pairs = n * (n - 1) / 2;
      for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        std::vector<std::pair<int, int>> edges;
        int bit = 0;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v, ++bit)
            if (mask & (1u << bit)) edges.emplace_back(u, v);
        Graph host(n, std::move(edges));
        if (!testutil::graph_connected(host)) continue;
        for (const auto& pat : patterns) {
          bool oracle = brute_force_minor(host, pat);
          auto engine = find_minor(host, pat, kUnlimitedBudget);
          bool found = engine.status == SearchStatus::Found;
          if (engine.status == SearchStatus::BudgetExhausted || oracle != found) {
            detail = "disagreement on n=" + std::to_string(n) +
                     " mask=" + std::to_string(mask);
            return false;
          }
          ++checked;
        }
      }
    }
    testutil::SplitMix rng(20260808);
    int done = 0;
    while (done < 200) {
      int n = 5 + rng.below(6);  // 5..10
      Graph host = testutil::random_graph(n, 25 + rng.below(55), rng);
      if (!testutil::graph_connected(host)) continue;
      ++done;
      for (const auto& pat : patterns) {
        bool oracle = brute_force_minor(host, pat);
        auto engine = find_minor(host, pat, kUnlimitedBudget);
        if (oracle != (engine.status == SearchStatus::Found)) {
          detail = "disagreement on random host " + std::to_string(done);
          return false;
        }
        ++checked;
      }
    }
    detail = std::to_string(checked) + " comparisons, zero disagreements";
    return true;
  });
}

// 7. Max vertex-disjoint paths equal the brute-force minimum vertex cut on
//    100 seeded random instances.
static void criterion7() {
  criterion(7, "Menger equality on 100 seeded instances", [](std::string& detail) {
    testutil::SplitMix rng(0xabcdef12);
    int done = 0;
    while (done < 100) {
      int n = 5 + rng.below(6);  // 5..10
      Graph g = testutil::random_graph(n, 30 + rng.below(45), rng);
      std::vector<int> sources, targets;
      int ns = 1 + rng.below(2), nt = 1 + rng.below(2);
      for (int i = 0; i < ns; ++i) sources.push_back(rng.below(n));
      for (int i = 0; i < nt; ++i) targets.push_back(rng.below(n));
      std::sort(sources.begin(), sources.end());
      sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      bool overlap = false;
      for (int t : targets)
        overlap |= std::binary_search(sources.begin(), sources.end(), t);
      if (overlap) continue;
      ++done;
      int flow = max_disjoint_paths(g, sources, targets).count;
      int cut = testutil::brute_min_vertex_cut(g, sources, targets);
      if (flow != cut) {
        detail = "instance " + std::to_string(done) + ": flow " + std::to_string(flow) +
                 " vs cut " + std::to_string(cut);
        return false;
      }
    }
    return true;
  });
}

// 8. Boosted distance law d_{S u S^2 u S^3} = ceil(d_S / 3), everywhere on the
//    stated balls.
static void criterion8() {
  criterion(8, "boosted distance law on Z^2 (r=9) and free(2) (r=6)", [](std::string& detail) {
    auto z2 = GroupModel::free_abelian(2);
    GenSet s2 = make_gen_set(*z2, {"e1", "e2"});
    Ball base2 = build_ball(z2, s2, 9);
    Ball boost2 = build_boosted_ball(z2, s2, 9);
    for (int v = 0; v < base2.vertex_count(); ++v) {
      auto idx = boost2.find(base2.vertices[v].key);
      if (!idx || boost2.dist[*idx] != (base2.dist[v] + 2) / 3) {
        detail = "law fails on Z^2 at " + base2.vertices[v].key;
        return false;
      }
    }
    auto f2 = GroupModel::free_group(2);
    GenSet sf = make_gen_set(*f2, {"a", "b"});
    Ball basef = build_ball(f2, sf, 6);
    Ball boostf = build_boosted_ball(f2, sf, 6);
    for (int v = 0; v < basef.vertex_count(); ++v) {
      auto idx = boostf.find(basef.vertices[v].key);
      if (!idx || boostf.dist[*idx] != (basef.dist[v] + 2) / 3) {
        detail = "law fails on free(2) at " + basef.vertices[v].key;
        return false;
      }
    }
    return true;
  });
}

// 9. The detour offset scheme and the 2r+3s decomposition.
static void criterion9() {
  criterion(9, "detour offsets d=2..100 and decompose_23 N=2..1000", [](std::string& detail) {
    for (int d = 2; d <= 100; ++d) {
      std::vector<int> offs = detour_offsets(d);
      if (offs.front() != 0 || offs.back() != d) {
        detail = "bad endpoints at d=" + std::to_string(d);
        return false;
      }
      for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
        int gap = offs[i + 1] - offs[i];
        if (gap < 2 || gap > 3) {
          detail = "bad gap at d=" + std::to_string(d);
          return false;
        }
      }
      for (int o : offs)
        if (std::find(offs.begin(), offs.end(), o + 1) != offs.end()) {
          detail = "offset tracks collide at d=" + std::to_string(d);
          return false;
        }
    }
    for (long long n = 2; n <= 1000; ++n) {
      auto [r, s] = decompose_23(n);
      if (r < 0 || s < 0 || 2 * r + 3 * s != n) {
        detail = "decompose_23 fails at N=" + std::to_string(n);
        return false;
      }
    }
    return true;
  });
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-caymin-cli>\n";
    return 64;
  }
  g_cli = argv[1];
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures;
}
