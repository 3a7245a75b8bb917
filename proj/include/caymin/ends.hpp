#pragma once

#include <optional>
#include <vector>

#include "caymin/ball.hpp"
#include "caymin/graph.hpp"

namespace caymin {

// Connected components of the ball minus the closed radius-r ball. A
// component is live when it touches the outer sphere; live components are the
// finite-scale stand-ins for ends.
struct EndComponent {
  std::vector<int> vertices;  // sorted ball indices, all with dist > r
  bool live = false;
};

struct EndProfile {
  int inner_radius = 0;
  int outer_radius = 0;
  std::vector<EndComponent> components;  // ordered by least vertex index
  int live_count = 0;
};

// Throws RadiusOutOfRangeError unless 0 <= r < ball.radius.
EndProfile live_components(const Ball& ball, int r);

int end_count_estimate(std::shared_ptr<const GroupModel> model,
                       const GenSet& gens, int r, int R);

struct DisjointPaths {
  int count = 0;
  std::vector<std::vector<int>> paths;  // pairwise vertex-disjoint
};

// Maximum number of pairwise vertex-disjoint source->target paths, by
// unit-vertex-capacity max flow (vertex splitting). Sources and targets must
// be nonempty and disjoint.
DisjointPaths max_disjoint_paths(const Graph& g,
                                 const std::vector<int>& sources,
                                 const std::vector<int>& targets);

// Disjoint-path count from (sphere r+1 within the component) to (outer
// sphere within the component), computed inside the component only. This is
// the sphere-separator surrogate for the size of a thin end; the true size is
// a limit over all separators, so only the trend over growing R is meaningful.
// Throws DeadComponentError for components that miss the outer sphere.
int thin_end_size_at_scale(const Ball& ball, int r, int component_id);

// m pairwise vertex-disjoint paths from distinct sphere-start_radius vertices
// of one live component out to the outer sphere.
struct RaySystem {
  int start_radius = 1;
  int component_id = 0;
  std::vector<std::vector<int>> paths;  // ball indices, start -> outer sphere
};

struct ExtractResult {
  std::optional<RaySystem> rays;
  int max_found = 0;  // achievable maximum when insufficient
};

// Component ids refer to live_components(ball, start_radius - 1).
ExtractResult extract_rays(const Ball& ball, int component_id, int m,
                           int start_radius);

// Invariant check used by tests and the construction: pairwise disjoint,
// consecutive vertices adjacent, endpoints on the stated spheres.
bool validate_ray_system(const Ball& ball, const RaySystem& rays);

}  // namespace caymin
