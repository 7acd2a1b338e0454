#include "convexa/hull.hpp"

#include <algorithm>

#include "convexa/atlas.hpp"
#include "convexa/errors.hpp"
#include "convexa/lp.hpp"

namespace convexa {

bool is_convex(const SpaceModel& space, const Region& r, const Atlas* atlas,
               WitnessPair* witness) {
  if (atlas) {
    for (const auto& chart : atlas->charts) {
      Region cut = atlas_intersect_region(space, chart, r);
      if (cut.empty()) continue;
      if (!is_convex(space, cut, nullptr, witness)) return false;
    }
    return true;
  }
  Region closed = region_closure(r);
  // Single closed polytope / box / interval / subtree fragment chain: the
  // corner-pair loop below decides those too, but a lone polytope is convex
  // by definition.
  if (closed.model == ModelKind::euclidean && closed.boxes.empty() &&
      closed.polys.size() == 1)
    return true;
  auto corners = region_corners(space, closed);
  for (size_t i = 0; i < corners.size(); ++i)
    for (size_t j = i + 1; j < corners.size(); ++j) {
      Segment s = segment(space, corners[i], corners[j]);
      if (!region_covers_segment(space, closed, s)) {
        if (witness) *witness = {corners[i], corners[j]};
        return false;
      }
    }
  return true;
}

namespace {

Region hull_euclid(const std::vector<Point>& pts) {
  std::vector<VecR> vs;
  for (const auto& p : pts) vs.push_back(p.coords);
  std::sort(vs.begin(), vs.end(), vec_lex_less);
  vs.erase(std::unique(vs.begin(), vs.end(), vec_eq), vs.end());
  // Minimal V-representation: drop points inside the hull of the others.
  if (vs.size() > 2) {
    std::vector<VecR> kept = vs;
    for (size_t i = 0; i < kept.size();) {
      std::vector<VecR> others;
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      if (lp_in_hull(others, kept[i]))
        kept.erase(kept.begin() + i);
      else
        ++i;
    }
    vs = std::move(kept);
  }
  Region r;
  r.model = ModelKind::euclidean;
  r.polys.push_back(make_poly(std::move(vs)));
  return r;
}

Region hull_tree(const SpaceModel& space, const std::vector<Point>& pts) {
  // Steiner subtree: union of the paths from pts[0] to every other point.
  Region r;
  r.model = space.kind;
  if (pts.size() == 1) return region_point(space, pts[0]);
  for (size_t i = 1; i < pts.size(); ++i) {
    Segment s = segment(space, pts[0], pts[i]);
    r = region_union(space, r, region_of_segment(space, s));
  }
  std::vector<EdgeFrag> efs;
  for (const auto& f : r.frags) efs.push_back({f.edge, f.t0, f.t1});
  auto norm = frags_normalize(efs);
  r.frags.clear();
  for (const auto& f : norm) r.frags.push_back({f.edge, f.t0, f.t1});
  if (r.frags.empty()) return region_point(space, pts[0]);
  r.graph_verts.clear();
  return r;
}

Region hull_polyhedral(const SpaceModel& space, const std::vector<Point>& pts,
                       const HullConfig& cfg) {
  Region r;
  r.model = space.kind;
  for (const auto& p : pts) r = region_union(space, r, region_point(space, p));
  // Iterated segment closure to a fixpoint over the corner set.
  for (int round = 0;; ++round) {
    auto corners = region_corners(space, r);
    Region next = r;
    for (size_t i = 0; i < corners.size(); ++i)
      for (size_t j = i + 1; j < corners.size(); ++j) {
        Segment s = segment(space, corners[i], corners[j]);
        if (!region_covers_segment(space, next, s))
          next = region_union(space, next, region_of_segment(space, s));
      }
    std::vector<EdgeFrag> efs;
    for (const auto& f : next.frags) efs.push_back({f.edge, f.t0, f.t1});
    auto norm = frags_normalize(efs);
    next.frags.clear();
    for (const auto& f : norm) next.frags.push_back({f.edge, f.t0, f.t1});
    if ((int)next.frags.size() > cfg.cell_budget)
      throw HullNotFinitelyRepresentable("closure exceeded the cell budget");
    if (region_set_eq(space, next, r)) return r;
    r = std::move(next);
    if (round > cfg.cell_budget)
      throw HullNotFinitelyRepresentable("closure failed to stabilize");
  }
}

}  // namespace

Region convex_hull(const SpaceModel& space, const std::vector<Point>& pts,
                   const HullConfig& cfg) {
  if (pts.empty()) throw SchemaError("convex_hull of an empty point set");
  for (const auto& p : pts) check_point(space, p);
  switch (space.kind) {
    case ModelKind::interval: {
      Rat lo = pts[0].x, hi = pts[0].x;
      for (const auto& p : pts) {
        lo = rat_min(lo, p.x);
        hi = rat_max(hi, p.x);
      }
      return region_interval(space.kind, lo, hi);
    }
    case ModelKind::euclidean: return hull_euclid(pts);
    case ModelKind::metric_tree: return hull_tree(space, pts);
    case ModelKind::polyhedral: return hull_polyhedral(space, pts, cfg);
  }
  throw InternalError("unreachable");
}

Region closure(const SpaceModel& space, const Region& r) {
  (void)space;
  return region_closure(r);
}

bool convex_region_includes(const SpaceModel& space, const Region& a,
                            const Region& b) {
  for (const auto& p : region_corners(space, b))
    if (!region_contains(space, a, p)) return false;
  if (b.model == ModelKind::interval || b.model == ModelKind::euclidean)
    return true;
  // Graph regions: corners suffice only when b's fragments are inside; check
  // fragment containment directly.
  Region na = region_closure(a), nb = region_closure(b);
  return region_graph_subset(nb, na);
}

}  // namespace convexa
