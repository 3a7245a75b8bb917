#include "caymin/construct.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "caymin/errors.hpp"

namespace caymin {

std::pair<long long, long long> decompose_23(long long n) {
  if (n < 2) throw TooShortError("decompose_23 needs N >= 2, got " + std::to_string(n));
  if (n % 2 == 0) return {n / 2, 0};
  return {(n - 3) / 2, 1};
}

std::vector<int> detour_offsets(int d) {
  if (d < 2) throw SegmentTooShortError("detour needs a span of >= 2 ray steps");
  std::vector<int> offs{0};
  int at = 0;
  if (d % 2 == 1) {
    at = 3;  // one 3-hop absorbs the odd parity, the rest are 2-hops
    offs.push_back(at);
  }
  while (at < d) {
    at += 2;
    offs.push_back(at);
  }
  return offs;
}

const char* to_string(ConstructStatus s) {
  switch (s) {
    case ConstructStatus::Ok:
      return "ok";
    case ConstructStatus::FrozenRegionExhausted:
      return "frozen-region-exhausted";
    default:
      return "routing-failed";
  }
}

// ---- ConstructionState -------------------------------------------------------

ConstructionState::ConstructionState(const Ball& base, const Ball& boosted,
                                     const RaySystem& rays)
    : base_(base), boosted_(boosted) {
  if (!validate_ray_system(base, rays))
    throw ParseError("construction needs a valid ray system for the base ball");
  base_to_boosted_.resize(base_.vertex_count());
  for (int v = 0; v < base_.vertex_count(); ++v) {
    auto idx = boosted_.find(base_.vertices[v].key);
    if (!idx)
      throw ModelMismatchError(
          "boosted ball does not cover the base ball's element universe");
    base_to_boosted_[v] = *idx;
  }
  used_.assign(base_.vertex_count(), 0);
  ray_of_.assign(base_.vertex_count(), -1);
  for (std::size_t k = 0; k < rays.paths.size(); ++k) {
    Ray ray;
    ray.verts = rays.paths[k];
    ray.orig_pos.resize(ray.verts.size());
    for (std::size_t p = 0; p < ray.verts.size(); ++p) {
      ray.orig_pos[p] = static_cast<int>(p);
      ray_of_[ray.verts[p]] = static_cast<int>(k);
    }
    rays_.push_back(std::move(ray));
  }
  frozen_radius_ = rays.start_radius - 1;
}

bool ConstructionState::boosted_adjacent(int base_u, int base_v) const {
  return boosted_.has_edge(base_to_boosted_[base_u], base_to_boosted_[base_v]);
}

int ConstructionState::unfrozen_suffix_start(int ray) const {
  const auto& verts = rays_[ray].verts;
  int start = 0;
  for (int p = 0; p < static_cast<int>(verts.size()); ++p)
    if (base_.dist[verts[p]] <= frozen_radius_) start = p + 1;
  return start;
}

void ConstructionState::freeze_over(const std::vector<int>& verts) {
  for (int v : verts) frozen_radius_ = std::max(frozen_radius_, base_.dist[v]);
}

std::vector<int> ConstructionState::ray_vertices(int i) const {
  return rays_[i].verts;
}

// Multi-source BFS in the base ball from ray i's unfrozen suffix to ray j's,
// restricted to the shell frozen_radius < dist <= max_dist. The frozen ball,
// consumed connector vertices, and (always) rays i and j are impassable;
// other rays are impassable only when avoid_other_rays is set.
ConstructionState::RouteResult ConstructionState::route(int i, int j,
                                                        bool avoid_other_rays,
                                                        int max_dist) const {
  RouteResult out;
  const int n = base_.vertex_count();
  std::vector<int> parent(n, -2);  // -2 unvisited, -1 source
  std::vector<char> is_target(n, 0);
  int sstart = unfrozen_suffix_start(i);
  int tstart = unfrozen_suffix_start(j);
  std::deque<int> queue;
  bool have_source_anywhere = false, have_target_anywhere = false;
  for (int p = sstart; p < static_cast<int>(rays_[i].verts.size()); ++p) {
    int v = rays_[i].verts[p];
    if (used_[v]) continue;
    have_source_anywhere = true;
    if (base_.dist[v] > max_dist) continue;
    parent[v] = -1;
    queue.push_back(v);
  }
  for (int p = tstart; p < static_cast<int>(rays_[j].verts.size()); ++p) {
    int v = rays_[j].verts[p];
    if (used_[v]) continue;
    have_target_anywhere = true;
    if (base_.dist[v] > max_dist) continue;
    is_target[v] = 1;
  }
  if (!have_source_anywhere || !have_target_anywhere) {
    out.rays_exhausted = true;
    out.why = "ray " + std::to_string(have_source_anywhere ? j : i) +
              " has no usable vertices outside the frozen ball";
    return out;
  }

  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : base_.adj[u]) {
      if (parent[w] != -2) continue;
      if (is_target[w]) {
        std::vector<int> path{w};
        for (int at = u; at != -1; at = parent[at]) path.push_back(at);
        std::reverse(path.begin(), path.end());
        out.path = std::move(path);
        return out;
      }
      if (base_.dist[w] <= frozen_radius_ || base_.dist[w] > max_dist || used_[w])
        continue;
      int r = ray_of_[w];
      if (r == i || r == j) continue;
      if (r != -1 && avoid_other_rays) continue;
      parent[w] = u;
      queue.push_back(w);
    }
  }
  out.why = avoid_other_rays ? "no connector avoiding the other rays"
                             : "no connector outside the frozen ball";
  return out;
}

ConstructStatus ConstructionState::repair_connector_against_ray(
    std::vector<int>& connector, int k, PairTrace& trace, std::string& message) {
  Ray& ray = rays_[k];
  const int len = static_cast<int>(ray.verts.size());
  std::vector<int> pos_of(base_.vertex_count(), -1);
  for (int p = 0; p < len; ++p) pos_of[ray.verts[p]] = p;

  int pfirst = -1, plast = -1;
  std::vector<int> hits;
  for (int idx = 0; idx < static_cast<int>(connector.size()); ++idx) {
    int p = pos_of[connector[idx]];
    if (p < 0) continue;
    hits.push_back(p);
    if (pfirst < 0) pfirst = idx;
    plast = idx;
  }
  if (hits.empty()) return ConstructStatus::Ok;

  std::sort(hits.begin(), hits.end());
  std::vector<int> touched;  // vertices whose ball must be frozen afterwards

  auto span_unfrozen = [&](int lo, int hi) {
    lo = std::max(lo, 0);
    hi = std::min(hi, len - 1);
    for (int p = lo; p <= hi; ++p)
      if (base_.dist[ray.verts[p]] <= frozen_radius_) {
        message = "repair span dips into the frozen ball";
        return false;
      }
    return true;
  };

  // The detour offsets assume unit steps, i.e. a stretch of the ray no
  // earlier repair has rewritten.
  auto span_virgin = [&](int lo, int hi) {
    lo = std::max(lo, 0);
    hi = std::min(hi, len - 1);
    for (int p = lo + 1; p <= hi; ++p)
      if (ray.orig_pos[p] - ray.orig_pos[p - 1] != 1) {
        message = "repair span overlaps an earlier modification";
        return false;
      }
    return true;
  };

  auto delete_positions = [&](int lo, int hi, const std::set<int>& keep) {
    Ray next;
    for (int p = 0; p < len; ++p) {
      bool drop = p >= lo && p <= hi && !keep.count(p);
      if (drop) {
        ray_of_[ray.verts[p]] = -1;
        touched.push_back(ray.verts[p]);
      } else {
        next.verts.push_back(ray.verts[p]);
        next.orig_pos.push_back(ray.orig_pos[p]);
      }
    }
    ray = std::move(next);
  };

  if (hits.size() == 1) {
    int p = hits[0];
    if (!span_unfrozen(p, p)) return ConstructStatus::RoutingFailed;
    if (p > 0 && p < len - 1 && !boosted_adjacent(ray.verts[p - 1], ray.verts[p + 1])) {
      message = "single deletion would disconnect the ray";
      return ConstructStatus::RoutingFailed;
    }
    touched.push_back(ray.verts[p]);
    if (p > 0) touched.push_back(ray.verts[p - 1]);
    if (p < len - 1) touched.push_back(ray.verts[p + 1]);
    delete_positions(p, p, {});
    ++trace.repairs_single;
  } else if (hits.size() == 2 && hits[1] == hits[0] + 1) {
    int p = hits[0];
    if (!span_unfrozen(p, p + 1)) return ConstructStatus::RoutingFailed;
    if (p > 0 && p + 2 <= len - 1 &&
        !boosted_adjacent(ray.verts[p - 1], ray.verts[p + 2])) {
      message = "double deletion would disconnect the ray";
      return ConstructStatus::RoutingFailed;
    }
    touched.push_back(ray.verts[p]);
    touched.push_back(ray.verts[p + 1]);
    if (p > 0) touched.push_back(ray.verts[p - 1]);
    if (p + 2 <= len - 1) touched.push_back(ray.verts[p + 2]);
    delete_positions(p, p + 1, {});
    ++trace.repairs_double;
  } else {
    // Detour case: the connector keeps its entry and exit contacts and hops
    // along the ray between them; the ray yields the interleaved positions.
    int ra = pos_of[connector[pfirst]];
    int rb = pos_of[connector[plast]];
    int alpha = std::min(ra, rb), beta = std::max(ra, rb);
    int d = beta - alpha;

    if (d == 1) {
      // The connector enters and leaves on consecutive ray vertices; every
      // other crossing sits between them on the connector and is cut away
      // with the replaced section. Both contact vertices move to the
      // connector, a double deletion for the ray.
      if (!span_unfrozen(alpha, beta)) return ConstructStatus::RoutingFailed;
      if (alpha > 0 && beta + 1 <= len - 1 &&
          !boosted_adjacent(ray.verts[alpha - 1], ray.verts[beta + 1])) {
        message = "double deletion would disconnect the ray";
        return ConstructStatus::RoutingFailed;
      }
      for (int p = std::max(alpha - 1, 0); p <= std::min(beta + 1, len - 1); ++p)
        touched.push_back(ray.verts[p]);
      std::vector<int> repl{connector[pfirst], connector[plast]};
      connector.erase(connector.begin() + pfirst, connector.begin() + plast + 1);
      connector.insert(connector.begin() + pfirst, repl.begin(), repl.end());
      delete_positions(alpha, beta, {});
      ++trace.repairs_double;
    } else {
      bool truncate_tail = beta == len - 1;
      if (truncate_tail && alpha == 0) {
        message = "detour would consume the whole ray";
        return ConstructStatus::RoutingFailed;
      }
      if (!span_unfrozen(alpha, std::min(beta + 1, len - 1)))
        return ConstructStatus::RoutingFailed;
      if (!truncate_tail && !span_virgin(std::max(alpha - 1, 0), beta + 1))
        return ConstructStatus::RoutingFailed;

      std::vector<int> offs = detour_offsets(d);
      std::vector<int> detour;  // connector's replacement, from position ra to rb
      for (int off : offs) detour.push_back(ray.verts[alpha + off]);
      if (ra > rb) std::reverse(detour.begin(), detour.end());
      for (std::size_t q = 0; q + 1 < detour.size(); ++q)
        if (!boosted_adjacent(detour[q], detour[q + 1])) {
          message = "detour hop is not a boosted edge";
          return ConstructStatus::RoutingFailed;
        }

      std::set<int> keep;
      if (!truncate_tail) {
        for (int off : offs) keep.insert(alpha + 1 + off);
        // Ray connectivity across the replacement.
        std::vector<int> ray_piece;
        if (alpha > 0) ray_piece.push_back(ray.verts[alpha - 1]);
        for (int off : offs) ray_piece.push_back(ray.verts[alpha + 1 + off]);
        if (beta + 2 <= len - 1) ray_piece.push_back(ray.verts[beta + 2]);
        for (std::size_t q = 0; q + 1 < ray_piece.size(); ++q)
          if (!boosted_adjacent(ray_piece[q], ray_piece[q + 1])) {
            message = "ray replacement hop is not a boosted edge";
            return ConstructStatus::RoutingFailed;
          }
      }
      for (int p = std::max(alpha - 1, 0); p <= std::min(beta + 1, len - 1); ++p)
        touched.push_back(ray.verts[p]);

      connector.erase(connector.begin() + pfirst, connector.begin() + plast + 1);
      connector.insert(connector.begin() + pfirst, detour.begin(), detour.end());
      delete_positions(alpha, truncate_tail ? len - 1 : beta + 1, keep);
      ++trace.repairs_detour;
    }
  }

  pending_freeze_.insert(pending_freeze_.end(), touched.begin(), touched.end());
  return ConstructStatus::Ok;
}

// Connectors are searched in shells hugging the frozen ball: the distance cap
// rises only when neither an avoiding nor a repairable crossing route exists
// below it. Tight shells keep the frozen radius growing by a few units per
// pair, which is what lets all C(m,2) pairs fit inside a finite ball.
ConstructionState::PairResult ConstructionState::connect_pair(int i, int j) {
  PairResult out;
  out.trace.i = i;
  out.trace.j = j;
  if (i >= j || i < 0 || j >= ray_count())
    throw ParseError("connect_pair needs 0 <= i < j < m");
  if (connectors_.count({i, j})) throw ParseError("pair already connected");

  pending_freeze_.clear();
  std::string last_fail;
  for (int cap = frozen_radius_ + 1; cap <= base_.radius; ++cap) {
    RouteResult avoided = route(i, j, true, cap);
    if (avoided.rays_exhausted) {
      out.status = ConstructStatus::FrozenRegionExhausted;
      out.message = avoided.why;
      return out;
    }
    std::optional<std::vector<int>> path;
    PairTrace attempt = out.trace;
    if (avoided.path) {
      path = std::move(avoided.path);
      attempt.avoided = true;
    } else {
      RouteResult crossing = route(i, j, false, cap);
      if (!crossing.path) {
        last_fail = crossing.why;
        continue;
      }
      path = std::move(crossing.path);
      auto rays_backup = rays_;
      auto ray_of_backup = ray_of_;
      auto pending_backup = pending_freeze_;
      bool repaired = true;
      for (int k = 0; k < ray_count() && repaired; ++k) {
        if (k == i || k == j) continue;
        std::string why;
        ConstructStatus st = repair_connector_against_ray(*path, k, attempt, why);
        if (st != ConstructStatus::Ok) {
          last_fail = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                      ") vs ray " + std::to_string(k) + ": " + why;
          repaired = false;
        }
      }
      if (!repaired) {
        rays_ = std::move(rays_backup);
        ray_of_ = std::move(ray_of_backup);
        pending_freeze_ = std::move(pending_backup);
        continue;
      }
    }

    // The connector must now touch other rays nowhere and rays i, j only at
    // its two endpoints.
    for (std::size_t idx = 0; idx < path->size(); ++idx) {
      int r = ray_of_[(*path)[idx]];
      bool endpoint = idx == 0 || idx + 1 == path->size();
      if ((endpoint && r != (idx == 0 ? i : j)) || (!endpoint && r != -1))
        throw Error("internal error: connector still crosses a ray after repairs");
    }
    for (int v : *path) {
      if (used_[v]) throw Error("internal error: connector reuses a consumed vertex");
      used_[v] = 1;
    }
    connectors_[{i, j}] = *path;
    attachments_.emplace_back(i, path->front());
    attachments_.emplace_back(j, path->back());
    attempt.connector_length = static_cast<int>(path->size());
    freeze_over(*path);
    freeze_over(pending_freeze_);
    pending_freeze_.clear();
    attempt.frozen_radius_after = frozen_radius_;
    out.trace = attempt;
    return out;
  }
  out.status = ConstructStatus::RoutingFailed;
  out.message = last_fail.empty() ? "no connector inside the ball" : last_fail;
  return out;
}

MinorEmbedding ConstructionState::assemble() const {
  const int m = ray_count();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!connectors_.count({i, j}))
        throw Error("assemble needs all pairs connected, missing (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");

  MinorEmbedding emb;
  emb.pattern = Graph::clique(m);
  emb.branch_sets.resize(m);

  for (int i = 0; i < m; ++i) {
    int cut = 0;  // keep at least the ray's first vertex
    for (auto [ray, vertex] : attachments_) {
      if (ray != i) continue;
      auto it = std::find(rays_[i].verts.begin(), rays_[i].verts.end(), vertex);
      if (it == rays_[i].verts.end())
        throw Error("internal error: an attachment vertex left its ray");
      cut = std::max(cut, static_cast<int>(it - rays_[i].verts.begin()));
    }
    for (int p = 0; p <= cut; ++p)
      emb.branch_sets[i].push_back(base_to_boosted_[rays_[i].verts[p]]);
  }

  for (const auto& [pair, path] : connectors_) {
    auto [i, j] = pair;
    const int interior = static_cast<int>(path.size()) - 2;
    const int to_i = (interior + 1) / 2;  // middle vertex goes to the lower index
    for (int q = 0; q < interior; ++q)
      emb.branch_sets[q < to_i ? i : j].push_back(base_to_boosted_[path[q + 1]]);
    std::pair<int, int> witness;
    if (interior == 0)
      witness = {path.front(), path.back()};
    else if (to_i == interior)
      witness = {path[interior], path.back()};
    else
      witness = {path[to_i], path[to_i + 1]};
    emb.edge_witness[{i, j}] = {base_to_boosted_[witness.first],
                                base_to_boosted_[witness.second]};
  }

  for (auto& bs : emb.branch_sets) {
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  }
  return emb;
}

void ConstructionState::check_invariants() const {
  std::vector<int> owner(base_.vertex_count(), -1);
  for (int k = 0; k < ray_count(); ++k) {
    const auto& verts = rays_[k].verts;
    if (verts.empty()) throw Error("invariant: ray emptied out");
    for (int v : verts) {
      if (owner[v] != -1) throw Error("invariant: rays intersect");
      owner[v] = k;
      if (ray_of_[v] != k) throw Error("invariant: ray membership map out of date");
    }
    for (std::size_t p = 0; p + 1 < verts.size(); ++p)
      if (!boosted_adjacent(verts[p], verts[p + 1]))
        throw Error("invariant: ray hop is not a boosted edge");
  }
  std::vector<int> cowner(base_.vertex_count(), -1);
  int cid = 0;
  for (const auto& [pair, path] : connectors_) {
    for (std::size_t idx = 0; idx < path.size(); ++idx) {
      int v = path[idx];
      if (!used_[v]) throw Error("invariant: connector vertex not marked used");
      if (cowner[v] != -1) throw Error("invariant: connectors intersect");
      cowner[v] = cid;
      bool endpoint = idx == 0 || idx + 1 == path.size();
      int expect = endpoint ? (idx == 0 ? pair.first : pair.second) : -1;
      if (owner[v] != expect)
        throw Error("invariant: connector touches a ray outside its endpoints");
      if (idx + 1 < path.size() && !boosted_adjacent(v, path[idx + 1]))
        throw Error("invariant: connector hop is not a boosted edge");
    }
    ++cid;
  }
}

// ---- orchestration -----------------------------------------------------------

Ball build_boosted_ball(std::shared_ptr<const GroupModel> model, const GenSet& gens,
                        int base_radius, int max_vertices) {
  GenSet boosted = power_union(*model, gens, 3);
  int radius = (base_radius + 2) / 3;
  return build_ball(std::move(model), boosted, radius, max_vertices);
}

ConstructResult build_clique_minor(std::shared_ptr<const GroupModel> model,
                                   const GenSet& gens, const Ball& ball,
                                   const RaySystem& rays, int m) {
  ConstructResult out;
  if (m < 1) throw ParseError("build_clique_minor: m must be >= 1");
  if (static_cast<int>(rays.paths.size()) != m)
    throw ParseError("build_clique_minor: ray system has the wrong number of rays");

  out.boosted = build_boosted_ball(model, gens, ball.radius);
  out.trace.start_radius = rays.start_radius;
  out.trace.boosted_radius = out.boosted->radius;

  ConstructionState state(ball, *out.boosted, rays);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto pair = state.connect_pair(i, j);
      out.trace.pairs.push_back(pair.trace);
      if (pair.status != ConstructStatus::Ok) {
        out.status = pair.status;
        out.message = pair.message;
        out.suggested_radius = 2 * ball.radius;
        return out;
      }
    }
  state.check_invariants();
  MinorEmbedding emb = state.assemble();
  if (!verify_embedding(induced_graph(*out.boosted), emb))
    throw Error("internal error: assembled embedding fails verification");
  out.embedding = std::move(emb);
  return out;
}

}  // namespace caymin
