#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "caymin/ball.hpp"
#include "caymin/ends.hpp"
#include "caymin/errors.hpp"
#include "caymin/group.hpp"
#include "test_util.hpp"

using namespace caymin;
using testutil::SplitMix;

namespace {

std::vector<std::vector<int>> cyclic2() { return {{0, 1}, {1, 0}}; }

}  // namespace

TEST_CASE("Z has two live components and thin size 1 on each side") {
  auto z = GroupModel::free_abelian(1);
  GenSet s = make_gen_set(*z, {"1"});
  Ball ball = build_ball(z, s, 5);
  EndProfile profile = live_components(ball, 1);
  CHECK(profile.components.size() == 2);
  CHECK(profile.live_count == 2);
  for (int c = 0; c < 2; ++c) CHECK(thin_end_size_at_scale(ball, 1, c) == 1);
}

TEST_CASE("Z2 annulus is one live component") {
  auto z2 = GroupModel::free_abelian(2);
  Ball ball = build_ball(z2, make_gen_set(*z2, {"e1", "e2"}), 8);
  for (int r = 1; r <= 6; ++r) {
    EndProfile profile = live_components(ball, r);
    CHECK(profile.live_count == 1);
  }
}

TEST_CASE("free group components per sphere vertex") {
  auto f2 = GroupModel::free_group(2);
  Ball ball = build_ball(f2, make_gen_set(*f2, {"a", "b"}), 4);
  // removing the identity leaves one subtree per first letter
  EndProfile at0 = live_components(ball, 0);
  CHECK(at0.live_count == 4);
  // removing the closed 1-ball leaves one subtree per length-2 word
  EndProfile at1 = live_components(ball, 1);
  CHECK(at1.live_count == 12);
  for (int c = 0; c < 12; ++c) CHECK(thin_end_size_at_scale(ball, 1, c) == 1);
}

TEST_CASE("live count grows with r on tree balls") {
  auto f2 = GroupModel::free_group(2);
  Ball ball = build_ball(f2, make_gen_set(*f2, {"a", "b"}), 5);
  int prev = 0;
  for (int r = 0; r <= 3; ++r) {
    int count = live_components(ball, r).live_count;
    CHECK(count >= prev);
    prev = count;
  }
}

TEST_CASE("end profile partitions the annulus") {
  auto f2 = GroupModel::free_group(2);
  Ball ball = build_ball(f2, make_gen_set(*f2, {"a", "b"}), 4);
  EndProfile profile = live_components(ball, 1);
  std::set<int> seen;
  int annulus = 0;
  for (int v = 0; v < ball.vertex_count(); ++v)
    if (ball.dist[v] > 1) ++annulus;
  for (const auto& comp : profile.components)
    for (int v : comp.vertices) {
      CHECK(ball.dist[v] > 1);
      CHECK(seen.insert(v).second);
    }
  CHECK(static_cast<int>(seen.size()) == annulus);
}

TEST_CASE("end count estimates across model families") {
  auto z5 = GroupModel::cyclic(5);
  CHECK(end_count_estimate(z5, make_gen_set(*z5, {"1"}), 1, 3) == 0);

  auto z = GroupModel::free_abelian(1);
  CHECK(end_count_estimate(z, make_gen_set(*z, {"1"}), 1, 6) == 2);

  auto z2 = GroupModel::free_abelian(2);
  CHECK(end_count_estimate(z2, make_gen_set(*z2, {"e1", "e2"}), 2, 8) == 1);

  auto dihedral = GroupModel::free_product({cyclic2(), cyclic2()});
  CHECK(end_count_estimate(dihedral, make_gen_set(*dihedral, {"a", "b"}), 1, 6) == 2);

  CHECK_THROWS_AS(end_count_estimate(z, make_gen_set(*z, {"1"}), 3, 3),
                  RadiusOutOfRangeError);
}

TEST_CASE("infinite dihedral group is a line with thin ends of size 1") {
  auto d = GroupModel::free_product({cyclic2(), cyclic2()});
  Ball ball = build_ball(d, make_gen_set(*d, {"a", "b"}), 6);
  EndProfile profile = live_components(ball, 1);
  REQUIRE(profile.live_count == 2);
  for (int c = 0; c < static_cast<int>(profile.components.size()); ++c)
    if (profile.components[c].live) CHECK(thin_end_size_at_scale(ball, 1, c) == 1);
}

TEST_CASE("max_disjoint_paths basics") {
  auto p = max_disjoint_paths(Graph::path(4), {0}, {3});
  CHECK(p.count == 1);
  REQUIRE(p.paths.size() == 1);
  CHECK(p.paths[0] == std::vector<int>{0, 1, 2, 3});

  auto k4 = max_disjoint_paths(Graph::clique(4), {0}, {3});
  CHECK(k4.count == 1);  // fully vertex-disjoint paths all consume vertex 0

  // disjoint source/target PAIRS give the real width of K4
  auto wide = max_disjoint_paths(Graph::clique(4), {0, 1}, {2, 3});
  CHECK(wide.count == 2);

  CHECK_THROWS_AS(max_disjoint_paths(Graph::path(4), {}, {3}), EmptyTerminalSetError);
  CHECK_THROWS_AS(max_disjoint_paths(Graph::path(4), {0}, {0}), EmptyTerminalSetError);
}

TEST_CASE("returned paths are disjoint, adjacent, and terminal-correct") {
  SplitMix rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 6 + rng.below(5);
    Graph g = testutil::random_graph(n, 40, rng);
    std::vector<int> sources{0}, targets{n - 1};
    if (rng.below(2)) sources.push_back(1);
    if (rng.below(2)) targets.push_back(n - 2);
    std::set<int> st(sources.begin(), sources.end());
    bool overlap = false;
    for (int t : targets) overlap |= st.count(t) > 0;
    if (overlap) continue;
    auto res = max_disjoint_paths(g, sources, targets);
    std::set<int> used;
    for (const auto& path : res.paths) {
      REQUIRE(!path.empty());
      CHECK(st.count(path.front()) == 1);
      CHECK(std::count(targets.begin(), targets.end(), path.back()) == 1);
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        CHECK(g.has_edge(path[i], path[i + 1]));
      for (int v : path) CHECK(used.insert(v).second);
    }
    CHECK(static_cast<int>(res.paths.size()) == res.count);
  }
}

TEST_CASE("Menger equality against the brute force vertex cut") {
  SplitMix rng2(123456);
  int done = 0;
  while (done < 40) {
    int n = 5 + rng2.below(5);  // 5..9
    Graph g = testutil::random_graph(n, 35 + rng2.below(40), rng2);
    std::vector<int> sources{0}, targets{n - 1};
    if (rng2.below(2)) sources.push_back(1 + rng2.below(n - 2));
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    bool bad = false;
    for (int s : sources) bad |= s == n - 1;
    if (bad) continue;
    ++done;
    auto res = max_disjoint_paths(g, sources, targets);
    CHECK(res.count == testutil::brute_min_vertex_cut(g, sources, targets));
  }
}

TEST_CASE("extract_rays on the plane") {
  auto z2 = GroupModel::free_abelian(2);
  Ball ball = build_ball(z2, make_gen_set(*z2, {"e1", "e2"}), 12);
  auto res = extract_rays(ball, 0, 4, 1);
  REQUIRE(res.rays.has_value());
  CHECK(validate_ray_system(ball, *res.rays));
  CHECK(res.rays->paths.size() == 4);

  // a single ray is a geodesic-length prefix
  auto one = extract_rays(ball, 0, 1, 1);
  REQUIRE(one.rays.has_value());
  CHECK(validate_ray_system(ball, *one.rays));
}

TEST_CASE("extract_rays reports the achievable maximum when short") {
  auto f2 = GroupModel::free_group(2);
  Ball ball = build_ball(f2, make_gen_set(*f2, {"a", "b"}), 5);
  auto res = extract_rays(ball, 0, 5, 2);  // each subtree component has cut 1
  CHECK_FALSE(res.rays.has_value());
  CHECK(res.max_found == 1);
}

TEST_CASE("dead components are rejected") {
  auto z5 = GroupModel::cyclic(5);
  Ball ball = build_ball(z5, make_gen_set(*z5, {"1"}), 2);
  // radius 2 covers the whole group; removing the 0-ball leaves a dead blob
  EndProfile profile = live_components(ball, 1);
  CHECK(profile.live_count == 1);  // the residue {2,3} ring touches sphere 2
  auto z = GroupModel::free_abelian(1);
  Ball line = build_ball(z, make_gen_set(*z, {"1"}), 3);
  CHECK_THROWS_AS(thin_end_size_at_scale(line, 1, 9), IndexOutOfBoundsError);
  CHECK_THROWS_AS(thin_end_size_at_scale(line, 2, 0), RadiusOutOfRangeError);
}
