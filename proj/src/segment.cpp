#include "convexa/segment.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "convexa/errors.hpp"

namespace convexa {

namespace {

Rat frag_len(const SpaceModel& space, const EdgeFrag& f) {
  return rat_abs(f.t1 - f.t0) * space.graph.edges[f.edge].w;
}

// Anchoring of a graph point on the vertex skeleton: exit vertices with the
// cost of reaching them and the partial fragment used.
struct Anchor {
  int vertex;
  Rat cost;
  bool has_frag;
  EdgeFrag frag;  // from the point towards `vertex`
};

std::vector<Anchor> anchors_of(const SpaceModel& space, const Point& p) {
  if (p.vertex >= 0) return {{p.vertex, Rat(0), false, {}}};
  const auto& e = space.graph.edges[p.edge];
  return {{e.u, p.t * e.w, true, {p.edge, p.t, Rat(0)}},
          {e.v, (1 - p.t) * e.w, true, {p.edge, p.t, Rat(1)}}};
}

struct Route {
  Rat total;
  std::vector<EdgeFrag> frags;  // from x to y
  bool tie_inside = false;      // >=2 shortest vertex paths on the middle leg
};

// Reconstructs the unique vertex path target -> source as full-edge
// fragments oriented source -> target.
std::vector<EdgeFrag> reconstruct(const SpaceModel& space, const GraphDists& gd,
                                  int source, int target) {
  std::vector<EdgeFrag> out;
  int cur = target;
  while (cur != source) {
    int e = gd.parent_edge[cur];
    const auto& ed = space.graph.edges[e];
    bool forward = (ed.v == cur);  // traversed u -> v
    out.push_back(forward ? EdgeFrag{e, Rat(0), Rat(1)}
                          : EdgeFrag{e, Rat(1), Rat(0)});
    cur = gd.parent_vert[cur];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

GraphDists graph_dijkstra(const SpaceModel& space, int source) {
  const auto& g = space.graph;
  int n = g.n_vertices;
  GraphDists gd;
  gd.dist.assign(n, Rat(-1));
  gd.npaths.assign(n, 0);
  gd.parent_edge.assign(n, -1);
  gd.parent_vert.assign(n, -1);
  std::set<std::pair<Rat, int>> q;
  gd.dist[source] = 0;
  gd.npaths[source] = 1;
  q.insert({Rat(0), source});
  while (!q.empty()) {
    auto [d, u] = *q.begin();
    q.erase(q.begin());
    for (int e : g.incident[u]) {
      const auto& ed = g.edges[e];
      int v = ed.u == u ? ed.v : ed.u;
      Rat nd = d + ed.w;
      if (gd.npaths[v] == 0 || nd < gd.dist[v]) {
        if (gd.npaths[v] != 0) q.erase({gd.dist[v], v});
        gd.dist[v] = nd;
        gd.npaths[v] = gd.npaths[u];
        gd.parent_edge[v] = e;
        gd.parent_vert[v] = u;
        q.insert({nd, v});
      } else if (nd == gd.dist[v]) {
        gd.npaths[v] = std::min(2, gd.npaths[v] + gd.npaths[u]);
      }
    }
  }
  return gd;
}

Rat graph_distance(const SpaceModel& space, const Point& x, const Point& y) {
  if (pt_eq(x, y)) return Rat(0);
  Rat best(-1);
  auto consider = [&](const Rat& c) {
    if (best < 0 || c < best) best = c;
  };
  if (x.edge >= 0 && x.edge == y.edge)
    consider(rat_abs(x.t - y.t) * space.graph.edges[x.edge].w);
  auto ay = anchors_of(space, y);
  for (const auto& ax : anchors_of(space, x)) {
    GraphDists gd = graph_dijkstra(space, ax.vertex);
    for (const auto& an : ay) consider(ax.cost + gd.dist[an.vertex] + an.cost);
  }
  return best;
}

std::vector<EdgeFrag> frags_normalize(const std::vector<EdgeFrag>& frags) {
  std::vector<EdgeFrag> out;
  for (const auto& f : frags) {
    if (f.t0 == f.t1) continue;
    EdgeFrag g = f;
    if (g.t1 < g.t0) std::swap(g.t0, g.t1);
    out.push_back(g);
  }
  std::sort(out.begin(), out.end(), [](const EdgeFrag& a, const EdgeFrag& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    if (a.t0 != b.t0) return a.t0 < b.t0;
    return a.t1 < b.t1;
  });
  std::vector<EdgeFrag> merged;
  for (const auto& f : out) {
    if (!merged.empty() && merged.back().edge == f.edge &&
        f.t0 <= merged.back().t1) {
      if (merged.back().t1 < f.t1) merged.back().t1 = f.t1;
    } else {
      merged.push_back(f);
    }
  }
  return merged;
}

Segment segment(const SpaceModel& space, const Point& x, const Point& y) {
  check_point(space, x);
  check_point(space, y);
  Segment s;
  s.model = space.kind;
  s.a = x;
  s.b = y;
  switch (space.kind) {
    case ModelKind::interval:
    case ModelKind::euclidean:
      return s;
    default: break;
  }
  if (pt_eq(x, y)) return s;

  // Candidate routes: anchored through the vertex skeleton, plus the direct
  // in-edge route when both points sit inside one edge.
  std::vector<Route> best;
  Rat best_cost(-1);
  auto consider = [&](Route r) {
    if (best_cost < 0 || r.total < best_cost) {
      best_cost = r.total;
      best.clear();
      best.push_back(std::move(r));
    } else if (r.total == best_cost) {
      best.push_back(std::move(r));
    }
  };

  if (x.edge >= 0 && x.edge == y.edge) {
    Route r;
    r.total = rat_abs(x.t - y.t) * space.graph.edges[x.edge].w;
    r.frags = {{x.edge, x.t, y.t}};
    consider(std::move(r));
  }
  auto ax = anchors_of(space, x);
  auto ay = anchors_of(space, y);
  for (const auto& a : ax) {
    GraphDists gd = graph_dijkstra(space, a.vertex);
    for (const auto& b : ay) {
      Route r;
      r.total = a.cost + gd.dist[b.vertex] + b.cost;
      if (a.has_frag) r.frags.push_back(a.frag);
      if (a.vertex != b.vertex) {
        if (gd.npaths[b.vertex] >= 2) {
          r.tie_inside = true;
        } else {
          auto mid = reconstruct(space, gd, a.vertex, b.vertex);
          r.frags.insert(r.frags.end(), mid.begin(), mid.end());
        }
      }
      if (b.has_frag)
        r.frags.push_back({b.frag.edge, b.frag.t1, b.frag.t0});  // into y
      consider(std::move(r));
    }
  }

  // Drop zero-length fragments, then decide uniqueness by comparing the
  // minimal routes as sets.
  for (auto& r : best) {
    std::vector<EdgeFrag> nz;
    for (const auto& f : r.frags)
      if (f.t0 != f.t1) nz.push_back(f);
    r.frags = std::move(nz);
  }
  auto tie_error = [&] {
    if (space.kind == ModelKind::metric_tree)
      throw InternalError("tie in a tree metric");
    throw NonUniqueGeodesic("two shortest paths between " + pt_str(x) + " and " +
                            pt_str(y));
  };
  const Route* chosen = nullptr;
  std::vector<EdgeFrag> chosen_norm;
  for (const auto& r : best) {
    if (r.tie_inside) tie_error();
    auto norm = frags_normalize(r.frags);
    if (!chosen) {
      chosen = &r;
      chosen_norm = std::move(norm);
    } else if (norm.size() != chosen_norm.size() ||
               !std::equal(norm.begin(), norm.end(), chosen_norm.begin(),
                           [](const EdgeFrag& a, const EdgeFrag& b) {
                             return a.edge == b.edge && a.t0 == b.t0 &&
                                    a.t1 == b.t1;
                           })) {
      tie_error();
    }
  }
  s.frags = chosen->frags;
  return s;
}

Rat seg_length(const SpaceModel& space, const Segment& seg) {
  switch (seg.model) {
    case ModelKind::interval: return rat_abs(seg.b.x - seg.a.x);
    case ModelKind::euclidean:
      return vec_eq(seg.a.coords, seg.b.coords) ? Rat(0) : Rat(1);
    default: {
      Rat L = 0;
      for (const auto& f : seg.frags) L += frag_len(space, f);
      return L;
    }
  }
}

bool seg_contains(const SpaceModel& space, const Segment& seg, const Point& p) {
  switch (seg.model) {
    case ModelKind::interval: {
      Rat lo = rat_min(seg.a.x, seg.b.x), hi = rat_max(seg.a.x, seg.b.x);
      return lo <= p.x && p.x <= hi;
    }
    case ModelKind::euclidean: {
      VecR d = vec_sub(seg.b.coords, seg.a.coords);
      if (vec_is_zero(d)) return vec_eq(p.coords, seg.a.coords);
      // p = a + lam*d with lam in [0,1], all coordinates consistent.
      Rat lam;
      bool have = false;
      for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) {
          if (p.coords[i] != seg.a.coords[i]) return false;
        } else if (!have) {
          lam = (p.coords[i] - seg.a.coords[i]) / d[i];
          have = true;
        }
      }
      for (size_t i = 0; i < d.size(); ++i)
        if (p.coords[i] != seg.a.coords[i] + lam * d[i]) return false;
      return 0 <= lam && lam <= 1;
    }
    default: {
      if (pt_eq(p, seg.a) || pt_eq(p, seg.b)) return true;
      for (const auto& f : seg.frags) {
        auto s = pt_on_edge(space, p, f.edge);
        if (!s) continue;
        Rat lo = rat_min(f.t0, f.t1), hi = rat_max(f.t0, f.t1);
        if (lo <= *s && *s <= hi) return true;
      }
      return false;
    }
  }
}

Rat seg_position(const SpaceModel& space, const Segment& seg, const Point& p) {
  switch (seg.model) {
    case ModelKind::interval: {
      Rat lo = rat_min(seg.a.x, seg.b.x), hi = rat_max(seg.a.x, seg.b.x);
      if (p.x < lo || p.x > hi) throw PointNotOnSegment(pt_str(p));
      return rat_abs(p.x - seg.a.x);
    }
    case ModelKind::euclidean: {
      if (!seg_contains(space, seg, p)) throw PointNotOnSegment(pt_str(p));
      VecR d = vec_sub(seg.b.coords, seg.a.coords);
      if (vec_is_zero(d)) return Rat(0);
      for (size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) return (p.coords[i] - seg.a.coords[i]) / d[i];
      return Rat(0);
    }
    default: {
      if (pt_eq(p, seg.a)) return Rat(0);
      Rat prefix = 0;
      for (const auto& f : seg.frags) {
        auto s = pt_on_edge(space, p, f.edge);
        if (s) {
          Rat lo = rat_min(f.t0, f.t1), hi = rat_max(f.t0, f.t1);
          if (lo <= *s && *s <= hi)
            return prefix + rat_abs(*s - f.t0) * space.graph.edges[f.edge].w;
        }
        prefix += frag_len(space, f);
      }
      throw PointNotOnSegment(pt_str(p));
    }
  }
}

Ordering segment_order(const SpaceModel& space, const Segment& seg,
                       const Point& z, const Point& t) {
  Rat pz = seg_position(space, seg, z);
  Rat pt = seg_position(space, seg, t);
  if (pz < pt) return Ordering::less;
  if (pt < pz) return Ordering::greater;
  return Ordering::equal;
}

std::pair<Segment, Segment> split(const SpaceModel& space, const Segment& seg,
                                  const Point& z) {
  if (!seg_contains(space, seg, z)) throw PointNotOnSegment(pt_str(z));
  Segment left, right;
  left.model = right.model = seg.model;
  left.a = seg.a;
  left.b = z;
  right.a = z;
  right.b = seg.b;
  if (seg.model == ModelKind::interval || seg.model == ModelKind::euclidean)
    return {left, right};
  Rat pos = seg_position(space, seg, z);
  Rat prefix = 0;
  bool cut = false;
  for (const auto& f : seg.frags) {
    Rat fl = frag_len(space, f);
    if (!cut && prefix + fl >= pos) {
      // Cut parameter inside this fragment.
      const Rat& w = space.graph.edges[f.edge].w;
      Rat off = (pos - prefix) / w;
      Rat s = f.t0 + (f.t1 < f.t0 ? -off : off);
      if (s != f.t0) left.frags.push_back({f.edge, f.t0, s});
      if (s != f.t1) right.frags.push_back({f.edge, s, f.t1});
      cut = true;
    } else if (!cut) {
      left.frags.push_back(f);
    } else {
      right.frags.push_back(f);
    }
    prefix += fl;
  }
  return {left, right};
}

Point seg_interp(const SpaceModel& space, const Segment& seg, const Rat& lam) {
  if (lam < 0 || lam > 1) throw InternalError("interp parameter outside [0,1]");
  switch (seg.model) {
    case ModelKind::interval:
      return pt_interval(seg.a.x + lam * (seg.b.x - seg.a.x));
    case ModelKind::euclidean:
      return pt_euclid(vec_lerp(seg.a.coords, seg.b.coords, lam));
    default: {
      Rat L = seg_length(space, seg);
      if (L == 0) return seg.a;
      Rat target = lam * L;
      Rat prefix = 0;
      for (const auto& f : seg.frags) {
        Rat fl = frag_len(space, f);
        if (prefix + fl >= target) {
          const Rat& w = space.graph.edges[f.edge].w;
          Rat off = (target - prefix) / w;
          Rat s = f.t0 + (f.t1 < f.t0 ? -off : off);
          return pt_edge(space, f.edge, s);
        }
        prefix += fl;
      }
      return seg.b;
    }
  }
}

bool seg_set_eq(const SpaceModel& space, const Segment& s1, const Segment& s2) {
  if (s1.model != s2.model) return false;
  switch (s1.model) {
    case ModelKind::interval:
      return rat_min(s1.a.x, s1.b.x) == rat_min(s2.a.x, s2.b.x) &&
             rat_max(s1.a.x, s1.b.x) == rat_max(s2.a.x, s2.b.x);
    case ModelKind::euclidean:
      return (pt_eq(s1.a, s2.a) && pt_eq(s1.b, s2.b)) ||
             (pt_eq(s1.a, s2.b) && pt_eq(s1.b, s2.a));
    default: {
      (void)space;
      auto n1 = frags_normalize(s1.frags);
      auto n2 = frags_normalize(s2.frags);
      if (n1.empty() && n2.empty()) return pt_eq(s1.a, s2.a);
      return n1.size() == n2.size() &&
             std::equal(n1.begin(), n1.end(), n2.begin(),
                        [](const EdgeFrag& a, const EdgeFrag& b) {
                          return a.edge == b.edge && a.t0 == b.t0 && a.t1 == b.t1;
                        });
    }
  }
}

Segment seg_reversed(const Segment& seg) {
  Segment r = seg;
  std::swap(r.a, r.b);
  std::reverse(r.frags.begin(), r.frags.end());
  for (auto& f : r.frags) std::swap(f.t0, f.t1);
  return r;
}

}  // namespace convexa
