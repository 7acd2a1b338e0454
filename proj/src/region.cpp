#include "convexa/region.hpp"

#include <algorithm>
#include <map>

#include "convexa/errors.hpp"
#include "convexa/lp.hpp"

namespace convexa {

namespace {

Rat cross2(const VecR& o, const VecR& a, const VecR& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool on_chord_2d(const VecR& a, const VecR& b, const VecR& p) {
  if (cross2(a, b, p) != 0) return false;
  for (int i = 0; i < 2; ++i) {
    Rat lo = rat_min(a[i], b[i]), hi = rat_max(a[i], b[i]);
    if (p[i] < lo || p[i] > hi) return false;
  }
  return true;
}

// Solves p = sum lam_i v_i, sum lam_i = 1 for an affinely independent simplex
// (k = dim+1 vertices). Returns false if the system is singular.
bool barycentric_inside(const std::vector<VecR>& v, const VecR& p, bool* inside) {
  int dim = (int)p.size();
  int k = (int)v.size();
  if (k != dim + 1) return false;
  // Augmented system rows: dim coordinate equations + the affine one.
  std::vector<std::vector<Rat>> m(dim + 1, std::vector<Rat>(k + 1));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = v[j][i];
    m[i][k] = p[i];
  }
  for (int j = 0; j < k; ++j) m[dim][j] = 1;
  m[dim][k] = 1;
  int rows = dim + 1;
  for (int col = 0, row = 0; col < k && row < rows; ++col, ++row) {
    int piv = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;  // affinely dependent
    std::swap(m[row], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[row][col];
      for (int c = col; c <= k; ++c) m[r][c] -= f * m[row][c];
    }
  }
  *inside = true;
  for (int j = 0; j < k; ++j) {
    Rat lam = m[j][k] / m[j][j];
    if (lam < 0) {
      *inside = false;
      break;
    }
  }
  return true;
}

}  // namespace

std::vector<VecR> hull2d_ccw(std::vector<VecR> pts) {
  std::sort(pts.begin(), pts.end(), vec_lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(), vec_eq), pts.end());
  int n = (int)pts.size();
  if (n <= 2) return pts;
  std::vector<VecR> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

PolyPiece make_poly(std::vector<VecR> verts) {
  PolyPiece p;
  p.verts = std::move(verts);
  if (!p.verts.empty() && p.verts[0].size() == 2) p.hull2d = hull2d_ccw(p.verts);
  return p;
}

Region region_interval(ModelKind kind, const Rat& lo, const Rat& hi,
                       bool lo_open, bool hi_open) {
  Region r;
  r.model = kind;
  r.intervals.push_back({lo, hi, lo_open, hi_open});
  return r;
}

Region region_box(const VecR& lo, const VecR& hi, bool open,
                  std::optional<Rat> diag_cut) {
  Region r;
  r.model = ModelKind::euclidean;
  r.boxes.push_back({lo, hi, open, std::move(diag_cut)});
  return r;
}

Region region_poly(std::vector<VecR> verts) {
  Region r;
  r.model = ModelKind::euclidean;
  r.polys.push_back(make_poly(std::move(verts)));
  return r;
}

Region region_point(const SpaceModel& space, const Point& p) {
  Region r;
  r.model = space.kind;
  switch (space.kind) {
    case ModelKind::interval: r.intervals.push_back({p.x, p.x}); break;
    case ModelKind::euclidean: r.polys.push_back(make_poly({p.coords})); break;
    default:
      if (p.vertex >= 0)
        r.graph_verts.push_back(p.vertex);
      else
        r.frags.push_back({p.edge, p.t, p.t});
  }
  return r;
}

Region region_of_segment(const SpaceModel& space, const Segment& seg) {
  (void)space;
  Region r;
  r.model = seg.model;
  switch (seg.model) {
    case ModelKind::interval:
      r.intervals.push_back(
          {rat_min(seg.a.x, seg.b.x), rat_max(seg.a.x, seg.b.x)});
      break;
    case ModelKind::euclidean:
      r.polys.push_back(make_poly({seg.a.coords, seg.b.coords}));
      break;
    default: {
      auto norm = frags_normalize(seg.frags);
      for (const auto& f : norm) r.frags.push_back({f.edge, f.t0, f.t1});
      if (norm.empty() && seg.a.vertex >= 0)
        r.graph_verts.push_back(seg.a.vertex);
      if (norm.empty() && seg.a.edge >= 0)
        r.frags.push_back({seg.a.edge, seg.a.t, seg.a.t});
    }
  }
  return r;
}

Region region_graph_ball(const SpaceModel& space, const Point& center,
                         const Rat& radius, bool open) {
  const auto& g = space.graph;
  Region r;
  r.model = space.kind;
  // Distance from the center to each vertex, then clip every edge.
  std::vector<Rat> dist(g.n_vertices);
  {
    for (int v = 0; v < g.n_vertices; ++v)
      dist[v] = graph_distance(space, center, pt_vertex(v, space.kind));
  }
  for (int e = 0; e < (int)g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    // Distance to the point at parameter t on edge e is
    // min(dist[u] + t*w, dist[v] + (1-t)*w), except on the center's own edge
    // where the direct route also applies; handle that via graph_distance on
    // candidate breakpoints. The function of t is piecewise linear with at
    // most one breakpoint per route pair; solve the <= radius set exactly.
    std::vector<std::pair<Rat, Rat>> lines;  // d(t) = c0 + c1 * t
    lines.push_back({dist[ed.u], ed.w});
    lines.push_back({dist[ed.v] + ed.w, -ed.w});
    if (center.edge == e) {
      lines.push_back({center.t * ed.w, -ed.w});   // left of center
      lines.push_back({-center.t * ed.w, ed.w});   // right of center
    }
    // Lower envelope min over lines; region where min <= radius is a union of
    // at most a few intervals; evaluate on the subdivision induced by all
    // pairwise crossings.
    std::vector<Rat> cuts = {Rat(0), Rat(1)};
    for (size_t i = 0; i < lines.size(); ++i)
      for (size_t j = i + 1; j < lines.size(); ++j) {
        if (lines[i].second == lines[j].second) continue;
        Rat t = (lines[j].first - lines[i].first) /
                (lines[i].second - lines[j].second);
        if (t > 0 && t < 1) cuts.push_back(t);
      }
    for (const auto& ln : lines) {
      if (ln.second == 0) continue;
      Rat t = (radius - ln.first) / ln.second;
      if (t > 0 && t < 1) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto dval = [&](const Rat& t) {
      Rat best = lines[0].first + lines[0].second * t;
      for (const auto& ln : lines) best = rat_min(best, ln.first + ln.second * t);
      if (center.edge == e) best = rat_abs(best);  // direct distances are |.|
      return best;
    };
    // A cell [cuts[i], cuts[i+1]] is inside iff both endpoints and midpoint
    // are within radius (d is linear on cells of the refined subdivision).
    Rat cur_lo;
    bool in_run = false;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      Rat mid = (cuts[i] + cuts[i + 1]) / 2;
      bool inside = dval(cuts[i]) <= radius && dval(cuts[i + 1]) <= radius &&
                    dval(mid) <= radius;
      if (inside && !in_run) {
        cur_lo = cuts[i];
        in_run = true;
      }
      if (!inside && in_run) {
        r.frags.push_back({e, cur_lo, cuts[i]});
        in_run = false;
      }
    }
    if (in_run) r.frags.push_back({e, cur_lo, cuts.back()});
  }
  if (open) {
    // Strict interior: trim fragment endpoints that sit exactly at distance
    // radius.
    for (auto& f : r.frags) {
      if (graph_distance(space, center, pt_edge(space, f.edge, f.t0)) == radius)
        f.open0 = true;
      if (graph_distance(space, center, pt_edge(space, f.edge, f.t1)) == radius)
        f.open1 = true;
    }
  }
  // Merge and record fully covered interior vertices.
  std::vector<GraphFrag> out;
  std::sort(r.frags.begin(), r.frags.end(), [](const GraphFrag& a, const GraphFrag& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.t0 < b.t0;
  });
  for (const auto& f : r.frags) {
    if (f.t0 == f.t1 && (f.open0 || f.open1)) continue;
    if (!out.empty() && out.back().edge == f.edge && f.t0 <= out.back().t1) {
      if (out.back().t1 < f.t1) {
        out.back().t1 = f.t1;
        out.back().open1 = f.open1;
      }
    } else {
      out.push_back(f);
    }
  }
  r.frags = std::move(out);
  return r;
}

bool poly_contains(const PolyPiece& poly, const VecR& p) {
  const auto& vs = poly.verts;
  if (vs.empty()) return false;
  if (vs.size() == 1) return vec_eq(vs[0], p);
  if (p.size() == 2) {
    const auto& h = poly.hull2d;
    if (h.size() == 1) return vec_eq(h[0], p);
    if (h.size() == 2) return on_chord_2d(h[0], h[1], p);
    for (size_t i = 0; i < h.size(); ++i) {
      if (cross2(h[i], h[(i + 1) % h.size()], p) < 0) return false;
    }
    return true;
  }
  bool inside;
  if (barycentric_inside(vs, p, &inside)) return inside;
  return lp_in_hull(vs, p);
}

namespace {

bool box_contains(const BoxPiece& b, const VecR& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (b.open ? !(b.lo[i] < p[i] && p[i] < b.hi[i])
               : !(b.lo[i] <= p[i] && p[i] <= b.hi[i]))
      return false;
  }
  if (b.diag_cut) {
    Rat s = 0;
    for (const auto& c : p) s += c;
    if (s > *b.diag_cut) return false;
  }
  return true;
}

bool frag_covers(const GraphFrag& f, const Rat& t) {
  if (t < f.t0 || t > f.t1) return false;
  if (t == f.t0 && f.open0) return false;
  if (t == f.t1 && f.open1) return false;
  return true;
}

}  // namespace

bool region_contains(const SpaceModel& space, const Region& r, const Point& p) {
  switch (r.model) {
    case ModelKind::interval: {
      for (const auto& piece : r.intervals) {
        if (p.x < piece.lo || p.x > piece.hi) continue;
        if (p.x == piece.lo && piece.lo_open) continue;
        if (p.x == piece.hi && piece.hi_open) continue;
        return true;
      }
      return false;
    }
    case ModelKind::euclidean: {
      for (const auto& b : r.boxes)
        if (box_contains(b, p.coords)) return true;
      for (const auto& poly : r.polys)
        if (poly_contains(poly, p.coords)) return true;
      return false;
    }
    default: {
      if (p.vertex >= 0) {
        for (int v : r.graph_verts)
          if (v == p.vertex) return true;
        for (const auto& f : r.frags) {
          auto t = pt_on_edge(space, p, f.edge);
          if (t && frag_covers(f, *t)) return true;
        }
        return false;
      }
      for (const auto& f : r.frags)
        if (f.edge == p.edge && frag_covers(f, p.t)) return true;
      return false;
    }
  }
}

bool cover_closed_interval(const Rat& lo, const Rat& hi,
                           std::vector<CoverPiece> pieces, Rat* gap_at) {
  std::vector<CoverPiece> ps;
  for (auto p : pieces) {
    if (p.lo < lo) {
      p.lo = lo;
      p.lo_open = false;
    }
    if (p.hi > hi) {
      p.hi = hi;
      p.hi_open = false;
    }
    if (p.lo > p.hi) continue;
    if (p.lo == p.hi && (p.lo_open || p.hi_open)) continue;
    ps.push_back(p);
  }
  std::sort(ps.begin(), ps.end(), [](const CoverPiece& a, const CoverPiece& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_open < b.lo_open;
  });
  Rat cur = lo;
  bool cur_incl = false;
  for (const auto& p : ps) {
    bool reach = p.lo < cur || (p.lo == cur && (!p.lo_open || cur_incl));
    if (!reach) break;
    if (p.hi > cur) {
      cur = p.hi;
      cur_incl = !p.hi_open;
    } else if (p.hi == cur && !p.hi_open) {
      cur_incl = true;
    }
    if (cur > hi || (cur == hi && cur_incl)) return true;
  }
  if (hi == lo && cur_incl) return true;
  if (gap_at) *gap_at = cur;
  return false;
}

std::optional<CoverPiece> clip_chord_box(const BoxPiece& box, const VecR& a,
                                         const VecR& b) {
  // Parameter range of {a + t(b-a)} inside the box, each slab exact.
  Rat lo = 0, hi = 1;
  bool lo_open = false, hi_open = false;
  auto tighten = [&](const Rat& c_lo, const Rat& c_hi, const Rat& va,
                     const Rat& d) -> bool {
    if (d == 0) {
      if (va < c_lo || va > c_hi) return false;
      if (box.open && (va == c_lo || va == c_hi)) return false;
      return true;
    }
    Rat t0 = (c_lo - va) / d, t1 = (c_hi - va) / d;
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > lo || (t0 == lo && box.open)) {
      lo = t0;
      lo_open = box.open;
    }
    if (t1 < hi || (t1 == hi && box.open)) {
      hi = t1;
      hi_open = box.open;
    }
    return true;
  };
  for (size_t i = 0; i < a.size(); ++i)
    if (!tighten(box.lo[i], box.hi[i], a[i], b[i] - a[i])) return std::nullopt;
  if (box.diag_cut) {
    Rat sa = 0, sd = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      sa += a[i];
      sd += b[i] - a[i];
    }
    if (sd == 0) {
      if (sa > *box.diag_cut) return std::nullopt;
    } else {
      Rat t = (*box.diag_cut - sa) / sd;
      if (sd > 0) {
        if (t < hi) {
          hi = t;
          hi_open = false;
        }
      } else {
        if (t > lo) {
          lo = t;
          lo_open = false;
        }
      }
    }
  }
  if (lo > hi || (lo == hi && (lo_open || hi_open))) return std::nullopt;
  return CoverPiece{lo, hi, lo_open, hi_open};
}

std::optional<CoverPiece> clip_chord_poly(const PolyPiece& poly, const VecR& a,
                                          const VecR& b) {
  if (poly.verts.empty()) return std::nullopt;
  VecR d = vec_sub(b, a);
  if (vec_is_zero(d)) {
    if (poly_contains(poly, a)) return CoverPiece{Rat(0), Rat(1)};
    return std::nullopt;
  }
  if (a.size() == 2 && poly.hull2d.size() >= 3) {
    // Halfplane clipping against the CCW hull edges.
    Rat lo = 0, hi = 1;
    const auto& h = poly.hull2d;
    for (size_t i = 0; i < h.size(); ++i) {
      const VecR& p0 = h[i];
      const VecR& p1 = h[(i + 1) % h.size()];
      // inside: cross(p1-p0, x-p0) >= 0
      Rat ex = p1[0] - p0[0], ey = p1[1] - p0[1];
      Rat fa = ex * (a[1] - p0[1]) - ey * (a[0] - p0[0]);
      Rat fd = ex * d[1] - ey * d[0];
      if (fd == 0) {
        if (fa < 0) return std::nullopt;
      } else {
        Rat t = -fa / fd;
        if (fd > 0) {
          if (t > lo) lo = t;
        } else {
          if (t < hi) hi = t;
        }
      }
      if (lo > hi) return std::nullopt;
    }
    return CoverPiece{lo, hi};
  }
  if (a.size() == 2 && poly.hull2d.size() == 2) {
    // Chord against a segment piece: intersect the two support lines.
    const VecR& p0 = poly.hull2d[0];
    const VecR& p1 = poly.hull2d[1];
    Rat c0 = cross2(p0, p1, a);
    VecR b2 = vec_add(a, d);
    Rat c1 = cross2(p0, p1, b2);
    if (c0 == 0 && c1 == 0) {
      // Collinear: parameter overlap.
      int ax = (p1[0] != p0[0]) ? 0 : 1;
      if (d[ax] == 0) {
        if (on_chord_2d(p0, p1, a)) return CoverPiece{Rat(0), Rat(1)};
        return std::nullopt;
      }
      Rat t0 = (p0[ax] - a[ax]) / d[ax], t1 = (p1[ax] - a[ax]) / d[ax];
      if (t0 > t1) std::swap(t0, t1);
      if (t1 < 0 || t0 > 1) return std::nullopt;
      return CoverPiece{rat_max(t0, Rat(0)), rat_min(t1, Rat(1))};
    }
    if (c0 == c1) return std::nullopt;  // parallel, off-line
    Rat t = c0 / (c0 - c1);
    if (t < 0 || t > 1) return std::nullopt;
    VecR q = vec_lerp(a, b2, t);
    if (!on_chord_2d(p0, p1, q)) return std::nullopt;
    return CoverPiece{t, t};
  }
  if (poly.verts.size() == 1) {
    // Singleton: chord hits it at one rational parameter or not at all.
    const VecR& v = poly.verts[0];
    Rat t;
    bool have = false;
    for (size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 0) {
        if (v[i] != a[i]) return std::nullopt;
      } else if (!have) {
        t = (v[i] - a[i]) / d[i];
        have = true;
      }
    }
    for (size_t i = 0; i < d.size(); ++i)
      if (v[i] != a[i] + t * d[i]) return std::nullopt;
    if (t < 0 || t > 1) return std::nullopt;
    return CoverPiece{t, t};
  }
  auto range = lp_line_clip(poly.verts, a, d);
  if (!range) return std::nullopt;
  Rat lo = rat_max(range->first, Rat(0));
  Rat hi = rat_min(range->second, Rat(1));
  if (lo > hi) return std::nullopt;
  return CoverPiece{lo, hi};
}

bool region_covers_segment(const SpaceModel& space, const Region& r,
                           const Segment& seg) {
  switch (r.model) {
    case ModelKind::interval: {
      std::vector<CoverPiece> ps;
      for (const auto& piece : r.intervals)
        ps.push_back({piece.lo, piece.hi, piece.lo_open, piece.hi_open});
      return cover_closed_interval(rat_min(seg.a.x, seg.b.x),
                                   rat_max(seg.a.x, seg.b.x), std::move(ps));
    }
    case ModelKind::euclidean: {
      std::vector<CoverPiece> ps;
      for (const auto& b : r.boxes) {
        auto c = clip_chord_box(b, seg.a.coords, seg.b.coords);
        if (c) ps.push_back(*c);
      }
      for (const auto& poly : r.polys) {
        auto c = clip_chord_poly(poly, seg.a.coords, seg.b.coords);
        if (c) ps.push_back(*c);
      }
      return cover_closed_interval(Rat(0), Rat(1), std::move(ps));
    }
    default: {
      auto norm = frags_normalize(seg.frags);
      if (norm.empty()) return region_contains(space, r, seg.a);
      for (const auto& f : norm) {
        std::vector<CoverPiece> ps;
        for (const auto& g : r.frags)
          if (g.edge == f.edge) ps.push_back({g.t0, g.t1, g.open0, g.open1});
        // Covered vertices plug endpoint holes.
        const auto& ed = space.graph.edges[f.edge];
        for (int v : r.graph_verts) {
          if (v == ed.u) ps.push_back({Rat(0), Rat(0)});
          if (v == ed.v) ps.push_back({Rat(1), Rat(1)});
        }
        if (!cover_closed_interval(f.t0, f.t1, std::move(ps))) return false;
      }
      return true;
    }
  }
}

std::vector<Point> region_corners(const SpaceModel& space, const Region& r) {
  std::vector<Point> out;
  auto push = [&](Point p) {
    for (const auto& q : out)
      if (pt_eq(q, p)) return;
    out.push_back(std::move(p));
  };
  switch (r.model) {
    case ModelKind::interval:
      for (const auto& p : r.intervals) {
        push(pt_interval(p.lo));
        push(pt_interval(p.hi));
      }
      break;
    case ModelKind::euclidean: {
      for (const auto& b : r.boxes) {
        int n = (int)b.lo.size();
        for (int mask = 0; mask < (1 << n); ++mask) {
          VecR c(n);
          for (int i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? b.hi[i] : b.lo[i];
          if (b.diag_cut) {
            Rat s = 0;
            for (const auto& x : c) s += x;
            if (s > *b.diag_cut) {
              // Corner cut away; emit the cut points along outgoing box edges.
              for (int i = 0; i < n; ++i) {
                if (c[i] == b.lo[i]) continue;
                Rat drop = s - *b.diag_cut;
                Rat reach = c[i] - b.lo[i];
                if (drop <= reach) {
                  VecR q = c;
                  q[i] -= drop;
                  push(pt_euclid(q));
                }
              }
              continue;
            }
          }
          push(pt_euclid(c));
        }
      }
      for (const auto& poly : r.polys)
        for (const auto& v : poly.verts) push(pt_euclid(v));
      break;
    }
    default: {
      for (const auto& f : r.frags) {
        push(pt_edge(space, f.edge, f.t0));
        push(pt_edge(space, f.edge, f.t1));
      }
      for (int v : r.graph_verts) push(pt_vertex(v, space.kind));
      // Covered graph vertices are branch candidates; include them.
      for (const auto& f : r.frags) {
        const auto& ed = space.graph.edges[f.edge];
        if (frag_covers(f, Rat(0))) push(pt_vertex(ed.u, space.kind));
        if (frag_covers(f, Rat(1))) push(pt_vertex(ed.v, space.kind));
      }
    }
  }
  return out;
}

Region region_closure(const Region& r) {
  Region c = r;
  for (auto& p : c.intervals) p.lo_open = p.hi_open = false;
  for (auto& f : c.frags) f.open0 = f.open1 = false;
  for (auto& b : c.boxes) b.open = false;
  return c;
}

Region region_union(const SpaceModel& space, const Region& a, const Region& b) {
  (void)space;
  if (a.model != b.model) throw InternalError("region model mismatch in union");
  Region r = a;
  r.intervals.insert(r.intervals.end(), b.intervals.begin(), b.intervals.end());
  r.frags.insert(r.frags.end(), b.frags.begin(), b.frags.end());
  r.graph_verts.insert(r.graph_verts.end(), b.graph_verts.begin(),
                       b.graph_verts.end());
  r.boxes.insert(r.boxes.end(), b.boxes.begin(), b.boxes.end());
  r.polys.insert(r.polys.end(), b.polys.begin(), b.polys.end());
  return r;
}

Region region_clip_box(const SpaceModel& space, const Region& r, const VecR& lo,
                       const VecR& hi) {
  (void)space;
  Region out;
  out.model = r.model;
  if (r.model == ModelKind::interval) {
    for (const auto& p : r.intervals) {
      Rat l = rat_max(p.lo, lo[0]), h = rat_min(p.hi, hi[0]);
      if (l > h) continue;
      out.intervals.push_back({l, h, p.lo_open && l == p.lo, p.hi_open && h == p.hi});
    }
    return out;
  }
  if (r.model != ModelKind::euclidean)
    throw InternalError("region_clip_box expects a linear model");
  for (const auto& b : r.boxes) {
    BoxPiece nb = b;
    bool ok = true;
    for (size_t i = 0; i < lo.size(); ++i) {
      nb.lo[i] = rat_max(nb.lo[i], lo[i]);
      nb.hi[i] = rat_min(nb.hi[i], hi[i]);
      if (nb.lo[i] > nb.hi[i]) ok = false;
    }
    if (ok) out.boxes.push_back(nb);
  }
  for (const auto& poly : r.polys) {
    if (poly.verts.empty()) continue;
    if (poly.verts[0].size() != 2)
      throw InternalError("polytope box clipping implemented for 2D only");
    // Sutherland-Hodgman against the four window halfplanes.
    std::vector<VecR> cur = poly.hull2d;
    if (cur.size() == 1) {
      bool in = true;
      for (int i = 0; i < 2; ++i)
        if (cur[0][i] < lo[i] || cur[0][i] > hi[i]) in = false;
      if (in) out.polys.push_back(make_poly(cur));
      continue;
    }
    auto clip_half = [&](std::vector<VecR> input, int coord, const Rat& bound,
                         bool keep_le) {
      std::vector<VecR> res;
      int n = (int)input.size();
      for (int i = 0; i < n; ++i) {
        const VecR& p = input[i];
        const VecR& q = input[(i + 1) % n];
        bool pin = keep_le ? p[coord] <= bound : p[coord] >= bound;
        bool qin = keep_le ? q[coord] <= bound : q[coord] >= bound;
        if (pin) res.push_back(p);
        if (pin != qin) {
          Rat t = (bound - p[coord]) / (q[coord] - p[coord]);
          res.push_back(vec_lerp(p, q, t));
        }
      }
      return res;
    };
    if (cur.size() == 2) {
      // Segment piece: clip the chord.
      BoxPiece window{lo, hi, false, std::nullopt};
      auto c = clip_chord_box(window, cur[0], cur[1]);
      if (c) {
        out.polys.push_back(make_poly({vec_lerp(cur[0], cur[1], c->lo),
                                       vec_lerp(cur[0], cur[1], c->hi)}));
      }
      continue;
    }
    for (int i = 0; i < 2 && !cur.empty(); ++i) {
      cur = clip_half(cur, i, lo[i], false);
      if (!cur.empty()) cur = clip_half(cur, i, hi[i], true);
    }
    if (!cur.empty()) out.polys.push_back(make_poly(cur));
  }
  return out;
}

Region region_graph_intersect(const SpaceModel& space, const Region& a,
                              const Region& b) {
  Region out;
  out.model = a.model;
  for (const auto& f : a.frags)
    for (const auto& g : b.frags) {
      if (f.edge != g.edge) continue;
      Rat lo = rat_max(f.t0, g.t0), hi = rat_min(f.t1, g.t1);
      if (lo > hi) continue;
      bool o0 = (lo == f.t0 && f.open0) || (lo == g.t0 && g.open0);
      bool o1 = (hi == f.t1 && f.open1) || (hi == g.t1 && g.open1);
      if (lo == hi && (o0 || o1)) continue;
      out.frags.push_back({f.edge, lo, hi, o0, o1});
    }
  for (int v : a.graph_verts)
    if (region_contains(space, b, pt_vertex(v, space.kind)))
      out.graph_verts.push_back(v);
  for (int v : b.graph_verts)
    if (region_contains(space, a, pt_vertex(v, space.kind)))
      out.graph_verts.push_back(v);
  return out;
}

bool region_graph_subset(const Region& inner, const Region& outer) {
  for (const auto& f : inner.frags) {
    std::vector<CoverPiece> ps;
    for (const auto& g : outer.frags)
      if (g.edge == f.edge) ps.push_back({g.t0, g.t1, g.open0, g.open1});
    if (!cover_closed_interval(f.t0, f.t1, std::move(ps))) return false;
  }
  return true;
}

bool region_set_eq(const SpaceModel& space, const Region& a, const Region& b) {
  if (a.model != b.model) return false;
  switch (a.model) {
    case ModelKind::interval: {
      // Mutual cover of every piece.
      auto covered = [&](const Region& x, const Region& y) {
        for (const auto& p : x.intervals) {
          std::vector<CoverPiece> ps;
          for (const auto& q : y.intervals)
            ps.push_back({q.lo, q.hi, q.lo_open, q.hi_open});
          if (!cover_closed_interval(p.lo, p.hi, std::move(ps))) return false;
        }
        return true;
      };
      return covered(a, b) && covered(b, a);
    }
    case ModelKind::euclidean: {
      // Exact equality used only for convex single-piece regions: compare by
      // mutual corner membership.
      auto inside = [&](const Region& x, const Region& y) {
        for (const auto& p : region_corners(space, x))
          if (!region_contains(space, y, p)) return false;
        return true;
      };
      return inside(a, b) && inside(b, a);
    }
    default: {
      Region na = a, nb = b;
      return region_graph_subset(na, nb) && region_graph_subset(nb, na) &&
             [&] {
               for (int v : a.graph_verts)
                 if (!region_contains(space, b, pt_vertex(v, space.kind)))
                   return false;
               for (int v : b.graph_verts)
                 if (!region_contains(space, a, pt_vertex(v, space.kind)))
                   return false;
               return true;
             }();
    }
  }
}

}  // namespace convexa
