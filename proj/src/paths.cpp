#include "convexa/paths.hpp"

#include <algorithm>
#include <queue>

#include "convexa/errors.hpp"

namespace convexa {

namespace {

LinePath assemble(const GeoSpace& geo, std::vector<PathPoint> bps,
                  std::vector<Segment> legs, std::vector<int> charts) {
  (void)geo;
  LinePath p;
  p.breakpoints = std::move(bps);
  p.legs = std::move(legs);
  p.leg_charts = std::move(charts);
  return p;
}

int find_common_chart(const GeoSpace& geo, const PathPoint& a,
                      const PathPoint& b) {
  for (int c : geo.charts_containing(a))
    if (geo.chart_contains(c, b)) return c;
  return -1;
}

}  // namespace

ChartChain chart_chain(const GeoSpace& geo, const PathPoint& x,
                       const PathPoint& y) {
  auto sx = geo.charts_containing(x);
  auto sy = geo.charts_containing(y);
  if (sx.empty() || sy.empty())
    throw NoChain("endpoint not covered by the atlas");
  std::vector<char> is_goal(geo.chart_count(), 0);
  for (int c : sy) is_goal[c] = 1;
  std::vector<int> parent(geo.chart_count(), -2);
  std::queue<int> q;
  for (int c : sx) {
    parent[c] = -1;
    q.push(c);
  }
  int hit = -1;
  for (int c : sx)
    if (is_goal[c]) hit = c;
  while (hit < 0 && !q.empty()) {
    int c = q.front();
    q.pop();
    for (int nb : geo.nerve_neighbors(c)) {
      if (parent[nb] != -2) continue;
      parent[nb] = c;
      if (is_goal[nb]) {
        hit = nb;
        break;
      }
      q.push(nb);
    }
  }
  if (hit < 0) throw NoChain("atlas nerve does not connect the endpoints");
  ChartChain chain;
  chain.x = x;
  chain.y = y;
  for (int c = hit; c != -1; c = parent[c]) chain.charts.push_back(c);
  std::reverse(chain.charts.begin(), chain.charts.end());
  return chain;
}

LinePath line_path_from_chain(const GeoSpace& geo, const ChartChain& chain) {
  std::vector<PathPoint> bps;
  bps.push_back({chain.x.y, chain.charts.front()});
  for (size_t i = 0; i + 1 < chain.charts.size(); ++i) {
    PathPoint rep =
        geo.overlap_representative(chain.charts[i], chain.charts[i + 1]);
    bps.push_back(rep);
  }
  bps.push_back({chain.y.y, chain.charts.back()});
  std::vector<PathPoint> dedup;
  std::vector<int> bp_chart;
  for (size_t i = 0; i < bps.size(); ++i) {
    if (!dedup.empty() && geo.same_point(dedup.back(), bps[i])) continue;
    dedup.push_back(bps[i]);
    bp_chart.push_back(i == 0 ? chain.charts.front()
                              : chain.charts[std::min(i - 1, chain.charts.size() - 1)]);
  }
  std::vector<Segment> legs;
  std::vector<int> charts;
  for (size_t i = 0; i + 1 < dedup.size(); ++i) {
    // The leg lives in the chart both breakpoints belong to; by construction
    // that is the chain chart between them.
    int c = -1;
    for (size_t k = 0; k < chain.charts.size() && c < 0; ++k) {
      int cand = chain.charts[k];
      if (geo.chart_contains(cand, dedup[i]) &&
          geo.chart_contains(cand, dedup[i + 1]))
        c = cand;
    }
    if (c < 0) c = find_common_chart(geo, dedup[i], dedup[i + 1]);
    if (c < 0) throw NoChain("no chart contains a chain leg");
    legs.push_back(geo.chart_segment(c, dedup[i], dedup[i + 1]));
    charts.push_back(c);
  }
  return assemble(geo, std::move(dedup), std::move(legs), std::move(charts));
}

LinePath line_path_from_breakpoints(const GeoSpace& geo,
                                    const std::vector<PathPoint>& bps_in) {
  std::vector<PathPoint> bps;
  for (const auto& b : bps_in)
    if (bps.empty() || !geo.same_point(bps.back(), b)) bps.push_back(b);
  if (bps.empty()) throw SchemaError("empty breakpoint list");
  std::vector<Segment> legs;
  std::vector<int> charts;
  for (size_t i = 0; i + 1 < bps.size(); ++i) {
    int c = find_common_chart(geo, bps[i], bps[i + 1]);
    if (c < 0)
      throw NoChain("no chart contains the leg " + pt_str(bps[i].y) + " -> " +
                    pt_str(bps[i + 1].y));
    legs.push_back(geo.chart_segment(c, bps[i], bps[i + 1]));
    charts.push_back(c);
  }
  return assemble(geo, bps, std::move(legs), std::move(charts));
}

LinePath line_path_from_polyline(const GeoSpace& geo,
                                 const std::vector<Point>& waypoints,
                                 int max_legs) {
  const SpaceModel& space = geo.model();
  std::vector<PathPoint> bps;
  std::vector<Segment> legs;
  std::vector<int> charts;
  if (waypoints.empty()) throw SchemaError("empty waypoint list");
  bps.push_back({waypoints[0], -1});
  for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
    if (pt_eq(waypoints[i], waypoints[i + 1])) continue;
    Segment chord = segment(space, waypoints[i], waypoints[i + 1]);
    // Bisect until every piece fits into some chart.
    struct Piece {
      Rat ta, tb;
    };
    std::vector<Piece> stack = {{Rat(0), Rat(1)}};
    std::vector<std::pair<Piece, int>> accepted;
    while (!stack.empty()) {
      if ((int)accepted.size() + (int)stack.size() > max_legs)
        throw NoChain("polyline leg cannot be chartered within the budget");
      Piece pc = stack.back();
      stack.pop_back();
      Point pa = seg_interp(space, chord, pc.ta);
      Point pb = seg_interp(space, chord, pc.tb);
      // A convex chart holding both endpoints holds the sub-geodesic.
      int c = find_common_chart(geo, {pa, -1}, {pb, -1});
      if (c >= 0) {
        accepted.push_back({pc, c});
        continue;
      }
      Rat mid = (pc.ta + pc.tb) / 2;
      if (mid == pc.ta || mid == pc.tb)
        throw NoChain("polyline leg cannot be chartered (degenerate split)");
      stack.push_back({mid, pc.tb});
      stack.push_back({pc.ta, mid});
    }
    std::sort(accepted.begin(), accepted.end(), [](const auto& a, const auto& b) {
      return a.first.ta < b.first.ta;
    });
    for (const auto& [pc, c] : accepted) {
      Point pa = seg_interp(space, chord, pc.ta);
      Point pb = seg_interp(space, chord, pc.tb);
      if (pt_eq(pa, pb)) continue;
      legs.push_back(geo.chart_segment(c, {pa, c}, {pb, c}));
      charts.push_back(c);
      bps.push_back({pb, c});
    }
  }
  return assemble(geo, std::move(bps), std::move(legs), std::move(charts));
}

LinePath simplify(const GeoSpace& geo, const LinePath& path) {
  const SpaceModel& space = geo.model();
  LinePath out;
  out.modifications = 0;
  if (path.breakpoints.empty()) return out;
  out.breakpoints.push_back(path.breakpoints.front());
  for (int i = 0; i < path.n_legs(); ++i) {
    Segment leg = path.legs[i];
    int chart = path.leg_charts[i];
    PathPoint tail = path.breakpoints[i + 1];
    if (geo.same_point(out.breakpoints.back(), tail)) continue;
    if (pt_eq(path.breakpoints[i].y, tail.y)) continue;  // degenerate leg
    // Largest point of this leg meeting the simple prefix (position 0 is the
    // shared junction and does not count).
    std::optional<std::pair<Rat, Point>> best;
    for (int k = 0; k < out.n_legs(); ++k) {
      auto m = geo.leg_meet_last(out.legs[k], out.leg_charts[k], leg, chart);
      if (m && m->first > 0 && (!best || m->first > best->first)) best = m;
    }
    if (best) {
      ++out.modifications;
      const Point& z = best->second;
      // Cut the prefix back at the first occurrence of z, then attach
      // C(z, tail).
      Segment probe;
      probe.model = space.kind;
      probe.a = probe.b = z;
      int cut_leg = -1;
      for (int k = 0; k < out.n_legs(); ++k) {
        if (geo.leg_meet_last(out.legs[k], out.leg_charts[k], probe, chart)) {
          cut_leg = k;
          break;
        }
      }
      if (cut_leg < 0) {
        // z is the prefix start itself (single-point prefix).
        out.breakpoints.resize(1);
      } else if (pt_eq(out.breakpoints[cut_leg].y, z)) {
        out.breakpoints.resize(cut_leg + 1);
        out.legs.resize(cut_leg);
        out.leg_charts.resize(cut_leg);
      } else if (pt_eq(out.breakpoints[cut_leg + 1].y, z)) {
        out.breakpoints.resize(cut_leg + 2);
        out.legs.resize(cut_leg + 1);
        out.leg_charts.resize(cut_leg + 1);
      } else {
        int keep_chart = out.leg_charts[cut_leg];
        auto halves = split(space, out.legs[cut_leg], z);
        out.breakpoints.resize(cut_leg + 1);
        out.legs.resize(cut_leg);
        out.leg_charts.resize(cut_leg);
        out.legs.push_back(halves.first);
        out.leg_charts.push_back(keep_chart);
        out.breakpoints.push_back({z, keep_chart});
      }
      // Remainder of the incoming leg beyond z.
      Segment rest = split(space, leg, z).second;
      if (!pt_eq(rest.a, rest.b) &&
          !geo.same_point(out.breakpoints.back(), tail)) {
        out.legs.push_back(rest);
        out.leg_charts.push_back(chart);
        out.breakpoints.push_back(tail);
      }
    } else {
      out.legs.push_back(leg);
      out.leg_charts.push_back(chart);
      out.breakpoints.push_back(tail);
    }
  }
  out.simple_flag = true;
  return out;
}

bool path_is_simple(const GeoSpace& geo, const LinePath& path) {
  for (size_t i = 0; i < path.breakpoints.size(); ++i)
    for (size_t j = i + 1; j < path.breakpoints.size(); ++j)
      if (geo.same_point(path.breakpoints[i], path.breakpoints[j])) return false;
  for (int i = 0; i < path.n_legs(); ++i) {
    for (int j = i + 1; j < path.n_legs(); ++j) {
      auto m = geo.leg_meet_last(path.legs[i], path.leg_charts[i], path.legs[j],
                                 path.leg_charts[j]);
      if (!m) continue;
      if (j == i + 1) {
        // Only the shared breakpoint, which sits at position 0 of leg j.
        if (m->first != 0) return false;
      } else {
        return false;
      }
    }
  }
  return true;
}

Region path_region(const GeoSpace& geo, const LinePath& path) {
  const SpaceModel& space = geo.model();
  Region r;
  r.model = space.kind;
  for (const auto& leg : path.legs)
    r = region_union(space, r, region_of_segment(space, leg));
  if (path.legs.empty() && !path.breakpoints.empty())
    r = region_point(space, path.breakpoints.front().y);
  if (space.is_graph()) {
    std::vector<EdgeFrag> efs;
    for (const auto& f : r.frags) efs.push_back({f.edge, f.t0, f.t1});
    auto norm = frags_normalize(efs);
    r.frags.clear();
    for (const auto& f : norm) r.frags.push_back({f.edge, f.t0, f.t1});
  }
  return r;
}

Region path_hull(const GeoSpace& geo, const LinePath& path) {
  const SpaceModel& space = geo.model();
  auto corners = region_corners(space, path_region(geo, path));
  return region_closure(convex_hull(space, corners));
}

ArcComparison hull_compare(const GeoSpace& geo, const LinePath& a,
                           const LinePath& b) {
  ArcComparison cmp;
  cmp.hull_a = path_hull(geo, a);
  cmp.hull_b = path_hull(geo, b);
  const SpaceModel& space = geo.model();
  bool a_in_b = convex_region_includes(space, cmp.hull_b, cmp.hull_a);
  bool b_in_a = convex_region_includes(space, cmp.hull_a, cmp.hull_b);
  cmp.verdict = a_in_b ? (b_in_a ? ArcVerdict::equivalent : ArcVerdict::less)
                       : (b_in_a ? ArcVerdict::greater : ArcVerdict::incomparable);
  return cmp;
}

namespace {

// True when every interior breakpoint of [i..j] already lies on the chord
// from bps[i] to bps[j] with increasing order positions.
bool span_is_chord(const GeoSpace& geo, const LinePath& p, int i, int j) {
  const SpaceModel& space = geo.model();
  Segment chord = segment(space, p.breakpoints[i].y, p.breakpoints[j].y);
  Rat prev(-1);
  for (int k = i; k <= j; ++k) {
    if (!seg_contains(space, chord, p.breakpoints[k].y)) return false;
    Rat pos = seg_position(space, chord, p.breakpoints[k].y);
    if (pos < prev) return false;
    prev = pos;
  }
  return true;
}

struct InscribedSpan {
  std::vector<PathPoint> bps;  // interior subdivision points
  std::vector<Segment> legs;
  std::vector<int> charts;
};

// Subdivides the chord bps[i] -> bps[j] into chart-sized legs. Fails (nullopt)
// when some piece cannot be chartered within the budget.
std::optional<InscribedSpan> inscribe_chord(const GeoSpace& geo,
                                            const PathPoint& from,
                                            const PathPoint& to,
                                            int max_legs) {
  const SpaceModel& space = geo.model();
  InscribedSpan out;
  struct Piece {
    Rat ta, tb;
  };
  std::vector<Piece> stack = {{Rat(0), Rat(1)}};
  std::vector<std::pair<Piece, int>> accepted;
  Segment chord = segment(space, from.y, to.y);
  int steps = 0;
  while (!stack.empty()) {
    if ((int)accepted.size() + (int)stack.size() > max_legs || ++steps > 4 * max_legs)
      return std::nullopt;
    Piece pc = stack.back();
    stack.pop_back();
    Point pa = seg_interp(space, chord, pc.ta);
    Point pb = seg_interp(space, chord, pc.tb);
    int chart = find_common_chart(geo, {pa, -1}, {pb, -1});
    if (chart >= 0) {
      accepted.push_back({pc, chart});
      continue;
    }
    Rat mid = (pc.ta + pc.tb) / 2;
    if (mid == pc.ta || mid == pc.tb) return std::nullopt;
    stack.push_back({mid, pc.tb});
    stack.push_back({pc.ta, mid});
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const auto& a, const auto& b) { return a.first.ta < b.first.ta; });
  for (size_t k = 0; k < accepted.size(); ++k) {
    const auto& [pc, chart] = accepted[k];
    Point pa = seg_interp(space, chord, pc.ta);
    Point pb = seg_interp(space, chord, pc.tb);
    if (k + 1 < accepted.size()) out.bps.push_back({pb, chart});
    out.legs.push_back(geo.chart_segment(chart, {pa, chart}, {pb, chart}));
    out.charts.push_back(chart);
  }
  return out;
}

bool try_merges(const GeoSpace& geo, LinePath& p) {
  bool any = false;
  bool again = true;
  while (again) {
    again = false;
    for (int i = 1; i + 1 < (int)p.breakpoints.size(); ++i) {
      int c = find_common_chart(geo, p.breakpoints[i - 1], p.breakpoints[i + 1]);
      if (c < 0) continue;
      Segment merged;
      try {
        merged = geo.chart_segment(c, p.breakpoints[i - 1], p.breakpoints[i + 1]);
      } catch (const NonUniqueGeodesic&) {
        continue;
      }
      p.breakpoints.erase(p.breakpoints.begin() + i);
      p.legs.erase(p.legs.begin() + i - 1, p.legs.begin() + i + 1);
      p.leg_charts.erase(p.leg_charts.begin() + i - 1,
                         p.leg_charts.begin() + i + 1);
      p.legs.insert(p.legs.begin() + (i - 1), merged);
      p.leg_charts.insert(p.leg_charts.begin() + (i - 1), c);
      any = again = true;
      break;  // leftmost-first, rescan
    }
  }
  return any;
}

bool try_inscription(const GeoSpace& geo, LinePath& p, int max_legs) {
  if (geo.model().kind != ModelKind::euclidean) return false;
  int n = (int)p.breakpoints.size() - 1;
  if (n < 2) return false;
  // Longest spans first, leftmost tie-break; the global span comes first.
  for (int len = n; len >= 2; --len) {
    for (int i = 0; i + len <= n; ++i) {
      int j = i + len;
      if (span_is_chord(geo, p, i, j)) continue;
      auto ins = inscribe_chord(geo, p.breakpoints[i], p.breakpoints[j], max_legs);
      if (!ins) continue;
      std::vector<PathPoint> bps(p.breakpoints.begin(), p.breakpoints.begin() + i + 1);
      std::vector<Segment> legs(p.legs.begin(), p.legs.begin() + i);
      std::vector<int> charts(p.leg_charts.begin(), p.leg_charts.begin() + i);
      bps.insert(bps.end(), ins->bps.begin(), ins->bps.end());
      legs.insert(legs.end(), ins->legs.begin(), ins->legs.end());
      charts.insert(charts.end(), ins->charts.begin(), ins->charts.end());
      bps.insert(bps.end(), p.breakpoints.begin() + j, p.breakpoints.end());
      legs.insert(legs.end(), p.legs.begin() + j, p.legs.end());
      charts.insert(charts.end(), p.leg_charts.begin() + j, p.leg_charts.end());
      p.breakpoints = std::move(bps);
      p.legs = std::move(legs);
      p.leg_charts = std::move(charts);
      return true;
    }
  }
  return false;
}

bool try_slides(const GeoSpace& geo, LinePath& p, const Rat& tol) {
  const SpaceModel& space = geo.model();
  bool any = false;
  for (int i = 1; i + 1 < (int)p.breakpoints.size(); ++i) {
    const PathPoint& a = p.breakpoints[i - 1];
    const PathPoint& b = p.breakpoints[i + 1];
    const PathPoint& x = p.breakpoints[i];
    Segment chord;
    try {
      chord = segment(space, a.y, b.y);
    } catch (const NonUniqueGeodesic&) {
      continue;
    }
    if (seg_contains(space, chord, x.y)) continue;
    Region overlap = geo.overlap_region(p.leg_charts[i - 1], p.leg_charts[i]);
    if (overlap.empty()) continue;
    // Deterministic point of chord n overlap.
    std::optional<Point> z;
    if (space.kind == ModelKind::interval || space.kind == ModelKind::euclidean) {
      std::vector<CoverPiece> ranges;
      if (space.kind == ModelKind::interval) {
        for (const auto& piece : overlap.intervals) {
          Rat lo = rat_max(rat_min(chord.a.x, chord.b.x), piece.lo);
          Rat hi = rat_min(rat_max(chord.a.x, chord.b.x), piece.hi);
          if (lo <= hi) ranges.push_back({lo, hi});
        }
        if (!ranges.empty()) {
          const CoverPiece* first = &ranges[0];
          for (const auto& r : ranges)
            if (r.lo < first->lo) first = &r;
          z = pt_interval((first->lo + first->hi) / 2);
        }
      } else {
        for (const auto& box : overlap.boxes) {
          auto c = clip_chord_box(box, chord.a.coords, chord.b.coords);
          if (c) ranges.push_back(*c);
        }
        for (const auto& poly : overlap.polys) {
          auto c = clip_chord_poly(poly, chord.a.coords, chord.b.coords);
          if (c) ranges.push_back(*c);
        }
        if (!ranges.empty()) {
          const CoverPiece* first = &ranges[0];
          for (const auto& r : ranges)
            if (r.lo < first->lo) first = &r;
          Rat mid = (first->lo + first->hi) / 2;
          z = pt_euclid(vec_lerp(chord.a.coords, chord.b.coords, mid));
        }
      }
    } else {
      Region chord_reg = region_of_segment(space, chord);
      Region cut = region_graph_intersect(space, chord_reg, overlap);
      if (!cut.frags.empty()) {
        const GraphFrag* first = &cut.frags[0];
        for (const auto& f : cut.frags)
          if (f.edge < first->edge || (f.edge == first->edge && f.t0 < first->t0))
            first = &f;
        z = pt_edge(space, first->edge, (first->t0 + first->t1) / 2);
      } else if (!cut.graph_verts.empty()) {
        z = pt_vertex(*std::min_element(cut.graph_verts.begin(),
                                        cut.graph_verts.end()),
                      space.kind);
      }
    }
    if (!z || pt_eq(*z, x.y)) continue;
    // Sub-tolerance moves do not count as progress.
    bool above_tol;
    if (space.kind == ModelKind::euclidean) {
      above_tol = vec_dist2(z->coords, x.y.coords) > tol * tol;
    } else if (space.kind == ModelKind::interval) {
      above_tol = rat_abs(z->x - x.y.x) > tol;
    } else {
      above_tol = graph_distance(space, *z, x.y) > tol;
    }
    if (!above_tol) continue;
    PathPoint zp{*z, p.breakpoints[i].sheet};
    Segment la, lb;
    try {
      la = geo.chart_segment(p.leg_charts[i - 1], p.breakpoints[i - 1], zp);
      lb = geo.chart_segment(p.leg_charts[i], zp, p.breakpoints[i + 1]);
    } catch (const NonUniqueGeodesic&) {
      continue;
    }
    p.breakpoints[i] = zp;
    p.legs[i - 1] = la;
    p.legs[i] = lb;
    any = true;
  }
  return any;
}

}  // namespace

LinePath straighten(const GeoSpace& geo, const LinePath& path,
                    const StraightenConfig& cfg) {
  LinePath p = simplify(geo, path);
  PathPoint start = p.breakpoints.front();
  PathPoint end = p.breakpoints.back();
  p.converged = false;
  int round = 0;
  for (; round < cfg.max_rounds; ++round) {
    bool changed = false;
    changed |= try_merges(geo, p);
    changed |= try_inscription(geo, p, cfg.max_inscription_legs);
    changed |= try_slides(geo, p, cfg.tol);
    if (changed) p = simplify(geo, p);
    if (!changed) {
      p.converged = true;
      break;
    }
  }
  p.rounds = round;
  if (!pt_eq(p.breakpoints.front().y, start.y) ||
      !pt_eq(p.breakpoints.back().y, end.y))
    throw InternalError("straighten moved an endpoint");
  return p;
}

bool is_minimal_arc(const GeoSpace& geo, const LinePath& path) {
  const SpaceModel& space = geo.model();
  if (path.breakpoints.size() < 2) return true;
  switch (space.kind) {
    case ModelKind::interval: {
      // A simple interval path is monotone, so it is the order interval.
      Rat prev = path.breakpoints.front().y.x;
      bool up = path.breakpoints.back().y.x >= prev;
      for (const auto& b : path.breakpoints) {
        if (up ? b.y.x < prev : b.y.x > prev) return false;
        prev = b.y.x;
      }
      return true;
    }
    case ModelKind::euclidean: {
      // Convex one-dimensional point sets are exactly the chords: all
      // breakpoints collinear and ordered.
      Segment chord;
      try {
        chord = segment(space, path.breakpoints.front().y,
                        path.breakpoints.back().y);
      } catch (const NonUniqueGeodesic&) {
        return false;
      }
      Rat prev(-1);
      for (const auto& b : path.breakpoints) {
        if (!seg_contains(space, chord, b.y)) return false;
        Rat pos = seg_position(space, chord, b.y);
        if (pos < prev) return false;
        prev = pos;
      }
      return true;
    }
    default: {
      Region reg = path_region(geo, path);
      if (!is_convex(space, reg)) return false;
      Region hull = path_hull(geo, path);
      return region_set_eq(space, region_closure(reg), hull);
    }
  }
}

}  // namespace convexa
