#include "convexa/geo.hpp"

#include <algorithm>

#include "convexa/errors.hpp"

namespace convexa {

bool GeoSpace::same_point(const PathPoint& a, const PathPoint& b) const {
  return pt_eq(a.y, b.y);
}

std::optional<std::pair<Rat, Point>> GeoSpace::leg_meet_last(
    const Segment& leg_a, int chart_a, const Segment& leg_b,
    int chart_b) const {
  (void)chart_a;
  (void)chart_b;
  return model_leg_meet_last(model(), leg_a, leg_b);
}

std::vector<int> ModelGeo::nerve_neighbors(int chart) const {
  std::vector<int> out;
  for (const auto& other : atlas_.charts) {
    if (other.id == chart) continue;
    if (charts_intersect(space_, atlas_.charts[chart], other))
      out.push_back(other.id);
  }
  return out;
}

PathPoint ModelGeo::overlap_representative(int c1, int c2) const {
  Point p = overlap_point(space_, atlas_, atlas_.charts[c1], atlas_.charts[c2]);
  return {p, c2};
}

Segment ModelGeo::chart_segment(int chart, const PathPoint& a,
                                const PathPoint& b) const {
  (void)chart;
  return segment(space_, a.y, b.y);
}

namespace {

std::optional<std::pair<Rat, Point>> meet_interval(const SpaceModel& space,
                                                   const Segment& a,
                                                   const Segment& b) {
  Rat alo = rat_min(a.a.x, a.b.x), ahi = rat_max(a.a.x, a.b.x);
  Rat blo = rat_min(b.a.x, b.b.x), bhi = rat_max(b.a.x, b.b.x);
  Rat lo = rat_max(alo, blo), hi = rat_min(ahi, bhi);
  if (lo > hi) return std::nullopt;
  // Farthest from b's start.
  Rat far = rat_abs(hi - b.a.x) >= rat_abs(lo - b.a.x) ? hi : lo;
  Point p = pt_interval(far);
  return std::make_pair(seg_position(space, b, p), p);
}

std::optional<std::pair<Rat, Point>> meet_euclid(const SpaceModel& space,
                                                 const Segment& a,
                                                 const Segment& b) {
  const VecR& a0 = a.a.coords;
  const VecR& a1 = a.b.coords;
  const VecR& b0 = b.a.coords;
  const VecR& b1 = b.b.coords;
  VecR u = vec_sub(a1, a0), w = vec_sub(b1, b0);
  auto result_at = [&](const Rat& t) {
    Point p = pt_euclid(vec_lerp(b0, b1, t));
    return std::make_pair(seg_position(space, b, p), p);
  };
  if (vec_is_zero(w)) {
    if (seg_contains(space, a, b.a)) return result_at(Rat(0));
    return std::nullopt;
  }
  bool parallel = true;
  for (size_t i = 0; i < u.size() && parallel; ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * w[j] - u[j] * w[i] != 0) {
        parallel = false;
        break;
      }
  if (vec_is_zero(u)) {
    if (!seg_contains(space, b, a.a)) return std::nullopt;
    return result_at(seg_position(space, b, a.a));
  }
  if (parallel) {
    // Same direction space; on the same line?
    if (!vec_collinear(a0, a1, b0)) return std::nullopt;
    // Parameters of a0, a1 along b.
    size_t ax = 0;
    while (w[ax] == 0) ++ax;
    Rat t0 = (a0[ax] - b0[ax]) / w[ax];
    Rat t1 = (a1[ax] - b0[ax]) / w[ax];
    if (t0 > t1) std::swap(t0, t1);
    Rat lo = rat_max(t0, Rat(0)), hi = rat_min(t1, Rat(1));
    if (lo > hi) return std::nullopt;
    return result_at(hi);
  }
  // Solve a0 + s u = b0 + t w on two independent rows, then verify all.
  int r0 = -1, r1 = -1;
  for (size_t i = 0; i < u.size() && r1 < 0; ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * (-w[j]) - u[j] * (-w[i]) != 0) {
        r0 = (int)i;
        r1 = (int)j;
        break;
      }
  if (r0 < 0) return std::nullopt;
  // [u  -w] [s t]^T = b0 - a0 restricted to rows r0, r1.
  Rat det = u[r0] * (-w[r1]) - u[r1] * (-w[r0]);
  Rat rhs0 = b0[r0] - a0[r0], rhs1 = b0[r1] - a0[r1];
  Rat s = (rhs0 * (-w[r1]) - rhs1 * (-w[r0])) / det;
  Rat t = (u[r0] * rhs1 - u[r1] * rhs0) / det;
  if (s < 0 || s > 1 || t < 0 || t > 1) return std::nullopt;
  for (size_t i = 0; i < u.size(); ++i)
    if (a0[i] + s * u[i] != b0[i] + t * w[i]) return std::nullopt;
  return result_at(t);
}

std::optional<std::pair<Rat, Point>> meet_graph(const SpaceModel& space,
                                                const Segment& a,
                                                const Segment& b) {
  Region ra = region_of_segment(space, a);
  Region rb = region_of_segment(space, b);
  Region common = region_graph_intersect(space, ra, rb);
  if (common.empty()) return std::nullopt;
  std::optional<std::pair<Rat, Point>> best;
  for (const auto& p : region_corners(space, common)) {
    Rat pos = seg_position(space, b, p);
    if (!best || pos > best->first) best = std::make_pair(pos, p);
  }
  return best;
}

}  // namespace

std::optional<std::pair<Rat, Point>> model_leg_meet_last(const SpaceModel& space,
                                                         const Segment& leg_a,
                                                         const Segment& leg_b) {
  switch (space.kind) {
    case ModelKind::interval: return meet_interval(space, leg_a, leg_b);
    case ModelKind::euclidean: return meet_euclid(space, leg_a, leg_b);
    default: return meet_graph(space, leg_a, leg_b);
  }
}

}  // namespace convexa
