#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "caymin/ball.hpp"
#include "caymin/construct.hpp"
#include "caymin/ends.hpp"
#include "caymin/errors.hpp"
#include "caymin/group.hpp"
#include "caymin/io.hpp"
#include "caymin/minor.hpp"

using namespace caymin;

TEST_CASE("decompose_23") {
  CHECK(decompose_23(2) == std::pair<long long, long long>{1, 0});
  CHECK(decompose_23(3) == std::pair<long long, long long>{0, 1});
  CHECK(decompose_23(7) == std::pair<long long, long long>{2, 1});
  for (long long n = 2; n <= 1000; ++n) {
    auto [r, s] = decompose_23(n);
    CHECK(r >= 0);
    CHECK(s >= 0);
    CHECK(2 * r + 3 * s == n);
  }
  CHECK_THROWS_AS(decompose_23(1), TooShortError);
  CHECK_THROWS_AS(decompose_23(0), TooShortError);
}

TEST_CASE("detour offset scheme: disjoint tracks, hops of 2 or 3") {
  CHECK(detour_offsets(2) == std::vector<int>{0, 2});
  CHECK(detour_offsets(5) == std::vector<int>{0, 3, 5});
  for (int d = 2; d <= 100; ++d) {
    std::vector<int> offs = detour_offsets(d);
    CHECK(offs.front() == 0);
    CHECK(offs.back() == d);
    std::set<int> track_a, track_b;
    for (int o : offs) {
      track_a.insert(o);
      track_b.insert(o + 1);
    }
    for (int o : track_a) CHECK_FALSE(track_b.count(o));
    for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
      int gap = offs[i + 1] - offs[i];
      CHECK(gap >= 2);
      CHECK(gap <= 3);
    }
  }
  CHECK_THROWS_AS(detour_offsets(1), SegmentTooShortError);
}

namespace {

struct PlaneFixture {
  std::shared_ptr<const GroupModel> model = GroupModel::free_abelian(2);
  GenSet gens = make_gen_set(*model, {"e1", "e2"});
  Ball ball;
  Ball boosted;

  explicit PlaneFixture(int radius)
      : ball(build_ball(model, gens, radius)),
        boosted(build_boosted_ball(model, gens, radius)) {}

  int at(int x, int y) const {
    auto idx = ball.find("(" + std::to_string(x) + "," + std::to_string(y) + ")");
    REQUIRE(idx.has_value());
    return *idx;
  }

  // straight path between lattice points, first along x then along y
  std::vector<int> lpath(int x0, int y0, int x1, int y1) const {
    std::vector<int> out;
    for (int x = x0; x != x1; x += x1 > x0 ? 1 : -1) out.push_back(at(x, y0));
    for (int y = y0; y != y1; y += y1 > y0 ? 1 : -1) out.push_back(at(x1, y));
    out.push_back(at(x1, y1));
    return out;
  }
};

// four axis rays: east, north, west, south
RaySystem axis_rays(const PlaneFixture& f, int radius) {
  RaySystem rays;
  rays.start_radius = 2;
  rays.component_id = 0;
  rays.paths.push_back(f.lpath(2, 0, radius, 0));
  rays.paths.push_back(f.lpath(0, 2, 0, radius));
  rays.paths.push_back(f.lpath(-2, 0, -radius, 0));
  rays.paths.push_back(f.lpath(0, -2, 0, -radius));
  return rays;
}

}  // namespace

TEST_CASE("adjacent rays connect without repairs") {
  PlaneFixture f(8);
  RaySystem rays = axis_rays(f, 8);
  REQUIRE(validate_ray_system(f.ball, rays));
  ConstructionState state(f.ball, f.boosted, rays);
  auto res = state.connect_pair(0, 1);  // east to north, nothing between
  CHECK(res.status == ConstructStatus::Ok);
  CHECK(res.trace.avoided);
  CHECK(res.trace.repairs_single + res.trace.repairs_double + res.trace.repairs_detour == 0);
  state.check_invariants();
}

TEST_CASE("opposite rays force repairs and stay disjoint") {
  PlaneFixture f(8);
  RaySystem rays = axis_rays(f, 8);
  ConstructionState state(f.ball, f.boosted, rays);
  auto res = state.connect_pair(0, 2);  // east to west: north and south block
  REQUIRE(res.status == ConstructStatus::Ok);
  CHECK_FALSE(res.trace.avoided);
  CHECK(res.trace.repairs_single + res.trace.repairs_double + res.trace.repairs_detour > 0);
  state.check_invariants();
}

TEST_CASE("single deletion repair keeps the ray a boosted path") {
  PlaneFixture f(8);
  RaySystem rays = axis_rays(f, 8);
  ConstructionState state(f.ball, f.boosted, rays);
  // handmade connector crossing the north ray at exactly (0,4)
  std::vector<int> connector{f.at(1, 4), f.at(0, 4), f.at(-1, 4)};
  PairTrace trace;
  std::string why;
  auto st = state.repair_connector_against_ray(connector, 1, trace, why);
  CHECK(st == ConstructStatus::Ok);
  CHECK(trace.repairs_single == 1);
  std::vector<int> north = state.ray_vertices(1);
  CHECK(std::find(north.begin(), north.end(), f.at(0, 4)) == north.end());
  state.check_invariants();  // ray 1 now hops (0,3) -> (0,5) via an S^2 edge
  CHECK(connector == std::vector<int>{f.at(1, 4), f.at(0, 4), f.at(-1, 4)});
}

TEST_CASE("double deletion repair uses an S^3 hop") {
  PlaneFixture f(8);
  RaySystem rays = axis_rays(f, 8);
  ConstructionState state(f.ball, f.boosted, rays);
  std::vector<int> connector{f.at(1, 4), f.at(0, 4), f.at(0, 5), f.at(-1, 5)};
  PairTrace trace;
  std::string why;
  auto st = state.repair_connector_against_ray(connector, 1, trace, why);
  CHECK(st == ConstructStatus::Ok);
  CHECK(trace.repairs_double == 1);
  std::vector<int> north = state.ray_vertices(1);
  CHECK(std::find(north.begin(), north.end(), f.at(0, 4)) == north.end());
  CHECK(std::find(north.begin(), north.end(), f.at(0, 5)) == north.end());
  state.check_invariants();
}

TEST_CASE("detour repair reroutes both connector and ray on disjoint tracks") {
  PlaneFixture f(10);
  RaySystem rays = axis_rays(f, 10);
  ConstructionState state(f.ball, f.boosted, rays);
  // crosses the north ray at (0,3) and (0,5): first and last hits two apart
  std::vector<int> connector{f.at(1, 3),  f.at(0, 3),  f.at(-1, 3), f.at(-1, 4),
                             f.at(-1, 5), f.at(0, 5),  f.at(1, 5)};
  PairTrace trace;
  std::string why;
  auto st = state.repair_connector_against_ray(connector, 1, trace, why);
  REQUIRE(st == ConstructStatus::Ok);
  CHECK(trace.repairs_detour == 1);
  // connector now hops along the old ray positions (0,3) -> (0,5)
  CHECK(connector == std::vector<int>{f.at(1, 3), f.at(0, 3), f.at(0, 5), f.at(1, 5)});
  // the ray lost (0,3),(0,5) and kept the shifted track (0,2),(0,4),(0,6),...
  std::vector<int> north = state.ray_vertices(1);
  CHECK(north.front() == f.at(0, 2));
  CHECK(north[1] == f.at(0, 4));
  CHECK(north[2] == f.at(0, 6));
  CHECK(north[3] == f.at(0, 7));
  state.check_invariants();
}

TEST_CASE("assemble m=1 and m=2") {
  PlaneFixture f(6);
  RaySystem one;
  one.start_radius = 1;
  one.component_id = 0;
  one.paths.push_back(f.lpath(1, 0, 6, 0));
  ConstructionState single(f.ball, f.boosted, one);
  MinorEmbedding k1 = single.assemble();
  CHECK(k1.pattern.n() == 1);
  CHECK(verify_embedding(induced_graph(f.boosted), k1));

  RaySystem two;
  two.start_radius = 1;
  two.component_id = 0;
  two.paths.push_back(f.lpath(1, 0, 6, 0));
  two.paths.push_back(f.lpath(0, 1, 0, 6));
  ConstructionState pair(f.ball, f.boosted, two);
  REQUIRE(pair.connect_pair(0, 1).status == ConstructStatus::Ok);
  MinorEmbedding k2 = pair.assemble();
  CHECK(k2.pattern.n() == 2);
  CHECK(verify_embedding(induced_graph(f.boosted), k2));
}

TEST_CASE("end-to-end K4 in the boosted plane ball") {
  auto z2 = GroupModel::free_abelian(2);
  GenSet s = make_gen_set(*z2, {"e1", "e2"});
  Ball ball = build_ball(z2, s, 24);
  auto rays = extract_rays(ball, 0, 4, 1);
  REQUIRE(rays.rays.has_value());
  auto res = build_clique_minor(z2, s, ball, *rays.rays, 4);
  REQUIRE(res.status == ConstructStatus::Ok);
  REQUIRE(res.embedding.has_value());
  CHECK(verify_embedding(induced_graph(*res.boosted), *res.embedding));

  // certificates live in the boosted ball, never the (planar) base ball
  Ball big = build_ball(z2, s, 36);
  auto res5 = build_clique_minor(z2, s, big, *extract_rays(big, 0, 5, 2).rays, 5);
  REQUIRE(res5.status == ConstructStatus::Ok);
  CHECK(verify_embedding(induced_graph(*res5.boosted), *res5.embedding));
}

TEST_CASE("frozen radius never decreases along the pair sequence") {
  auto z2 = GroupModel::free_abelian(2);
  GenSet s = make_gen_set(*z2, {"e1", "e2"});
  Ball ball = build_ball(z2, s, 36);
  auto rays = extract_rays(ball, 0, 5, 2);
  REQUIRE(rays.rays.has_value());
  auto res = build_clique_minor(z2, s, ball, *rays.rays, 5);
  REQUIRE(res.status == ConstructStatus::Ok);
  int last = 0;
  for (const auto& p : res.trace.pairs) {
    CHECK(p.frozen_radius_after >= last);
    last = p.frozen_radius_after;
  }
}

TEST_CASE("construction output is deterministic") {
  auto z2 = GroupModel::free_abelian(2);
  GenSet s = make_gen_set(*z2, {"e1", "e2"});
  Ball ball = build_ball(z2, s, 24);
  auto rays = extract_rays(ball, 0, 4, 1);
  REQUIRE(rays.rays.has_value());
  auto a = build_clique_minor(z2, s, ball, *rays.rays, 4);
  auto b = build_clique_minor(z2, s, ball, *rays.rays, 4);
  REQUIRE(a.status == ConstructStatus::Ok);
  REQUIRE(b.status == ConstructStatus::Ok);
  CHECK(embedding_to_json(*a.embedding) == embedding_to_json(*b.embedding));
}

TEST_CASE("rays in separate free-group subtrees cannot be joined") {
  auto f2 = GroupModel::free_group(2);
  GenSet s = make_gen_set(*f2, {"a", "b"});
  Ball ball = build_ball(f2, s, 5);
  RaySystem rays;
  rays.start_radius = 1;
  rays.component_id = 0;
  for (const char* base : {"a", "b", "A"}) {
    std::vector<int> path;
    std::string word;
    for (int i = 0; i < 5; ++i) {
      word += base;
      path.push_back(*ball.find(word));
    }
    rays.paths.push_back(std::move(path));
  }
  REQUIRE(validate_ray_system(ball, rays));
  auto res = build_clique_minor(f2, s, ball, rays, 3);
  CHECK(res.status != ConstructStatus::Ok);
  CHECK_FALSE(res.embedding.has_value());
  CHECK(res.suggested_radius > ball.radius);
}

TEST_CASE("construction rejects inconsistent inputs") {
  PlaneFixture f(6);
  RaySystem rays = axis_rays(f, 6);
  CHECK_THROWS_AS(build_clique_minor(f.model, f.gens, f.ball, rays, 3), ParseError);
  RaySystem broken = rays;
  broken.paths[0][1] = broken.paths[1][1];  // overlap
  CHECK_FALSE(validate_ray_system(f.ball, broken));
  CHECK_THROWS_AS(ConstructionState(f.ball, f.boosted, broken), ParseError);
}
