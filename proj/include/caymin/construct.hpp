#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "caymin/ball.hpp"
#include "caymin/ends.hpp"
#include "caymin/minor.hpp"

namespace caymin {

// N = 2r + 3s with the canonical choice s = N mod 2. Throws TooShortError
// for N < 2.
std::pair<long long, long long> decompose_23(long long n);

// Relative positions used by a detour across d >= 2 consecutive ray steps:
// {0,2,4,...,d} for even d, {0,3,5,...,d} for odd d. The detour path L uses
// these offsets from the first hit; the replacement ray path L' uses the same
// offsets shifted by one, so the two are disjoint and every gap is 2 or 3.
std::vector<int> detour_offsets(int d);

enum class ConstructStatus { Ok, FrozenRegionExhausted, RoutingFailed };

const char* to_string(ConstructStatus s);

struct PairTrace {
  int i = 0, j = 0;
  bool avoided = false;  // connector found without touching other rays
  int repairs_single = 0;
  int repairs_double = 0;
  int repairs_detour = 0;
  int connector_length = 0;  // vertices
  int frozen_radius_after = 0;
};

struct ConstructTrace {
  int start_radius = 0;
  int boosted_radius = 0;
  std::vector<PairTrace> pairs;
};

struct ConstructResult {
  ConstructStatus status = ConstructStatus::Ok;
  std::optional<MinorEmbedding> embedding;  // indices into the boosted ball
  std::optional<Ball> boosted;              // the ball the certificate lives in
  std::string message;
  int suggested_radius = 0;  // on failure, a radius likely large enough
  ConstructTrace trace;
};

// State of the ray-to-clique construction. Rays live in the base ball over S;
// connectors and repaired rays are paths of the boosted ball over
// S u S^2 u S^3 (same element universe, matched by canonical key). The frozen
// radius only grows, and nothing inside the frozen ball is modified after it
// is covered.
class ConstructionState {
 public:
  ConstructionState(const Ball& base, const Ball& boosted,
                    const RaySystem& rays);

  struct PairResult {
    ConstructStatus status = ConstructStatus::Ok;
    std::string message;
    PairTrace trace;
  };

  // Connects rays i and j by a connector disjoint from everything else,
  // repairing crossings of other rays per the three cases (single deletion,
  // double deletion, detour), then freezes a ball covering all work so far.
  PairResult connect_pair(int i, int j);

  // Removes the crossings of `connector` (base/boosted ball indices, base
  // ball vertex ids) with ray k in place. Exposed for unit tests.
  ConstructStatus repair_connector_against_ray(std::vector<int>& connector,
                                               int k, PairTrace& trace,
                                               std::string& message);

  // Half-split attribution of each connector, ray truncation, branch-set
  // assembly. Requires all pairs connected. Result indices refer to the
  // boosted ball.
  MinorEmbedding assemble() const;

  int frozen_radius() const { return frozen_radius_; }
  int ray_count() const { return static_cast<int>(rays_.size()); }
  std::vector<int> ray_vertices(int i) const;

  // Full invariant sweep (disjointness, boosted adjacency of every hop,
  // connector separation). Cheap enough to run after every mutation in tests.
  void check_invariants() const;

 private:
  struct Ray {
    std::vector<int> verts;     // base-ball indices, in path order
    std::vector<int> orig_pos;  // position in the unmodified ray
  };

  const Ball& base_;
  const Ball& boosted_;
  std::vector<Ray> rays_;
  std::map<std::pair<int, int>, std::vector<int>> connectors_;
  std::vector<std::pair<int, int>> attachments_;  // (ray, base vertex)
  std::vector<char> used_;   // base vertices consumed by connectors
  std::vector<int> ray_of_;  // base vertex -> ray index or -1
  std::vector<int> base_to_boosted_;
  std::vector<int> pending_freeze_;
  int frozen_radius_ = 0;

  struct RouteResult {
    std::optional<std::vector<int>> path;
    bool rays_exhausted = false;
    std::string why;
  };

  bool boosted_adjacent(int base_u, int base_v) const;
  int unfrozen_suffix_start(int ray) const;
  RouteResult route(int i, int j, bool avoid_other_rays, int max_dist) const;
  void freeze_over(const std::vector<int>& verts);
};

// End-to-end orchestration: boosted ball over power_union(S,3), pairs in
// lexicographic order, repairs, frozen-radius bookkeeping, assembly, and a
// final verify_embedding against the boosted ball.
ConstructResult build_clique_minor(std::shared_ptr<const GroupModel> model,
                                   const GenSet& gens, const Ball& ball,
                                   const RaySystem& rays, int m);

// The boosted ball used by the construction: generators power_union(S,3),
// radius ceil(radius/3), which covers the base ball's element universe.
Ball build_boosted_ball(std::shared_ptr<const GroupModel> model,
                        const GenSet& gens, int base_radius,
                        int max_vertices = kDefaultBallVertexBudget);

}  // namespace caymin
