#include "convexa/atlas.hpp"

#include <algorithm>

#include "convexa/errors.hpp"
#include "convexa/hull.hpp"

namespace convexa {

namespace {

void add_interval_chart(const SpaceModel& space, Atlas& atlas, const Rat& c,
                        const Rat& rho) {
  const Rat& a = space.interval.a;
  const Rat& b = space.interval.b;
  Rat lo = rat_max(a, c - rho), hi = rat_min(b, c + rho);
  if (!(lo < hi)) return;  // empty or degenerate relative interior
  Region reg = region_interval(space.kind, lo, hi, lo != a, hi != b);
  Chart ch;
  ch.id = (int)atlas.charts.size();
  ch.center = pt_interval(c);
  ch.radius = rho;
  ch.region = std::move(reg);
  atlas.charts.push_back(std::move(ch));
}

std::vector<Point> graph_cover_samples(const SpaceModel& space, const Rat& step) {
  std::vector<Point> samples;
  for (int v = 0; v < space.graph.n_vertices; ++v)
    samples.push_back(pt_vertex(v, space.kind));
  for (int e = 0; e < (int)space.graph.edges.size(); ++e) {
    const Rat& w = space.graph.edges[e].w;
    long k = 1;
    while (Rat(k) * step < w) {
      samples.push_back(pt_edge(space, e, Rat(k) * step / w));
      ++k;
    }
  }
  return samples;
}

}  // namespace

Atlas default_atlas(const SpaceModel& space, const AtlasConfig& cfg) {
  if (cfg.granularity <= 0) throw SchemaError("granularity must be positive");
  if (cfg.overlap_factor <= 1) throw SchemaError("overlap_factor must exceed 1");
  Rat rho = cfg.granularity / 2;
  Rat step = cfg.granularity / cfg.overlap_factor;
  Atlas atlas;
  atlas.lattice_step = step;
  std::vector<Point> samples;

  switch (space.kind) {
    case ModelKind::interval: {
      const Rat& a = space.interval.a;
      const Rat& b = space.interval.b;
      for (long k = rat_floor_div(a - rho, step); Rat(k) * step <= b + rho; ++k)
        add_interval_chart(space, atlas, Rat(k) * step, rho);
      samples.push_back(pt_interval(a));
      samples.push_back(pt_interval(b));
      for (long k = rat_ceil_div(a, step / 2); Rat(k) * (step / 2) < b; ++k)
        samples.push_back(pt_interval(Rat(k) * (step / 2)));
      break;
    }
    case ModelKind::euclidean: {
      VecR lo, hi;
      if (cfg.cover_box) {
        lo = cfg.cover_box->first;
        hi = cfg.cover_box->second;
      } else if (space.euclid.bounds) {
        const auto& vs = space.euclid.bounds->verts;
        lo = hi = vs[0];
        for (const auto& v : vs)
          for (int i = 0; i < space.euclid.dim; ++i) {
            lo[i] = rat_min(lo[i], v[i]);
            hi[i] = rat_max(hi[i], v[i]);
          }
      } else {
        throw CannotCover("unbounded euclidean space: supply a cover box");
      }
      int dim = space.euclid.dim;
      std::vector<long> kmin(dim), kmax(dim);
      for (int i = 0; i < dim; ++i) {
        kmin[i] = rat_ceil_div(lo[i] - rho, step);
        kmax[i] = rat_floor_div(hi[i] + rho, step);
        if (kmin[i] > kmax[i]) kmax[i] = kmin[i];
      }
      std::vector<long> idx = kmin;
      while (true) {
        VecR c(dim);
        for (int i = 0; i < dim; ++i) c[i] = Rat(idx[i]) * step;
        VecR blo(dim), bhi(dim);
        for (int i = 0; i < dim; ++i) {
          blo[i] = c[i] - rho;
          bhi[i] = c[i] + rho;
        }
        Chart ch;
        ch.id = (int)atlas.charts.size();
        ch.center = pt_euclid(c);
        ch.radius = rho;
        ch.region = region_box(blo, bhi, /*open=*/true);
        atlas.charts.push_back(std::move(ch));
        int i = dim - 1;
        while (i >= 0 && idx[i] == kmax[i]) {
          idx[i] = kmin[i];
          --i;
        }
        if (i < 0) break;
        ++idx[i];
      }
      // Sample lattice at half step across the cover box.
      std::vector<long> smin(dim), smax(dim);
      Rat sstep = step / 2;
      for (int i = 0; i < dim; ++i) {
        smin[i] = rat_ceil_div(lo[i], sstep);
        smax[i] = rat_floor_div(hi[i], sstep);
        if (smin[i] > smax[i]) smax[i] = smin[i];
      }
      std::vector<long> sidx = smin;
      while (true) {
        VecR c(dim);
        for (int i = 0; i < dim; ++i) c[i] = Rat(sidx[i]) * sstep;
        samples.push_back(pt_euclid(c));
        int i = dim - 1;
        while (i >= 0 && sidx[i] == smax[i]) {
          sidx[i] = smin[i];
          --i;
        }
        if (i < 0) break;
        ++sidx[i];
      }
      break;
    }
    default: {
      std::vector<Point> centers = graph_cover_samples(space, step);
      for (const auto& c : centers) {
        Region reg = region_graph_ball(space, c, rho, /*open=*/true);
        WitnessPair w;
        bool convex = false;
        try {
          convex = is_convex(space, reg, nullptr, &w);
        } catch (const NonUniqueGeodesic&) {
          convex = false;
        }
        if (!convex)
          throw CannotCover("ball chart at " + pt_str(c) +
                            " is not convex at this granularity");
        Chart ch;
        ch.id = (int)atlas.charts.size();
        ch.center = c;
        ch.radius = rho;
        ch.region = std::move(reg);
        atlas.charts.push_back(std::move(ch));
      }
      samples = graph_cover_samples(space, step / 2);
      break;
    }
  }

  for (const auto& p : samples) {
    bool covered = false;
    for (const auto& ch : atlas.charts)
      if (region_contains(space, ch.region, p)) {
        covered = true;
        break;
      }
    if (!covered) throw CannotCover("sample " + pt_str(p) + " not covered");
  }
  return atlas;
}

std::vector<int> atlas_charts_containing(const SpaceModel& space,
                                         const Atlas& atlas, const Point& p) {
  std::vector<int> ids;
  for (const auto& ch : atlas.charts)
    if (region_contains(space, ch.region, p)) ids.push_back(ch.id);
  return ids;
}

bool charts_intersect(const SpaceModel& space, const Chart& a, const Chart& b) {
  return !chart_overlap(space, a, b).empty();
}

Region chart_overlap(const SpaceModel& space, const Chart& a, const Chart& b) {
  Region out;
  out.model = a.region.model;
  switch (a.region.model) {
    case ModelKind::interval: {
      for (const auto& p : a.region.intervals)
        for (const auto& q : b.region.intervals) {
          Rat lo = rat_max(p.lo, q.lo), hi = rat_min(p.hi, q.hi);
          if (lo > hi) continue;
          bool lo_open = (lo == p.lo && p.lo_open) || (lo == q.lo && q.lo_open);
          bool hi_open = (hi == p.hi && p.hi_open) || (hi == q.hi && q.hi_open);
          if (lo == hi && (lo_open || hi_open)) continue;
          out.intervals.push_back({lo, hi, lo_open, hi_open});
        }
      return out;
    }
    case ModelKind::euclidean: {
      for (const auto& p : a.region.boxes)
        for (const auto& q : b.region.boxes) {
          BoxPiece nb = p;
          nb.open = p.open || q.open;
          bool ok = true;
          for (size_t i = 0; i < nb.lo.size(); ++i) {
            nb.lo[i] = rat_max(p.lo[i], q.lo[i]);
            nb.hi[i] = rat_min(p.hi[i], q.hi[i]);
            if (nb.open ? !(nb.lo[i] < nb.hi[i]) : nb.lo[i] > nb.hi[i]) ok = false;
          }
          if (ok) out.boxes.push_back(nb);
        }
      return out;
    }
    default:
      return region_graph_intersect(space, a.region, b.region);
  }
}

Point overlap_point(const SpaceModel& space, const Atlas& atlas, const Chart& a,
                    const Chart& b) {
  Region ov = chart_overlap(space, a, b);
  if (ov.empty()) throw InternalError("overlap_point on disjoint charts");
  const Rat& step = atlas.lattice_step;
  switch (ov.model) {
    case ModelKind::interval: {
      // Least piece by lo, then least lattice point strictly inside.
      const IntervalPiece* best = &ov.intervals[0];
      for (const auto& p : ov.intervals)
        if (p.lo < best->lo) best = &p;
      long k = rat_floor_div(best->lo, step) + 1;
      Rat cand = Rat(k) * step;
      if (cand < best->hi && (cand > best->lo))
        return pt_interval(cand);
      return pt_interval((best->lo + best->hi) / 2);
    }
    case ModelKind::euclidean: {
      const BoxPiece* best = &ov.boxes[0];
      for (const auto& p : ov.boxes)
        if (vec_lex_less(p.lo, best->lo)) best = &p;
      VecR c(best->lo.size());
      for (size_t i = 0; i < c.size(); ++i) {
        long k = rat_floor_div(best->lo[i], step) + 1;
        Rat cand = Rat(k) * step;
        c[i] = (cand < best->hi[i]) ? cand : (best->lo[i] + best->hi[i]) / 2;
      }
      return pt_euclid(c);
    }
    default: {
      // Least covered vertex, else a lattice point on the least fragment.
      std::vector<int> vs = ov.graph_verts;
      for (const auto& f : ov.frags) {
        const auto& ed = space.graph.edges[f.edge];
        if (f.t0 == 0 && !f.open0) vs.push_back(ed.u);
        if (f.t1 == 1 && !f.open1) vs.push_back(ed.v);
      }
      if (!vs.empty())
        return pt_vertex(*std::min_element(vs.begin(), vs.end()), space.kind);
      const GraphFrag* best = nullptr;
      for (const auto& f : ov.frags)
        if (!best || f.edge < best->edge ||
            (f.edge == best->edge && f.t0 < best->t0))
          best = &f;
      const Rat& w = space.graph.edges[best->edge].w;
      Rat tstep = step / w;
      long k = rat_floor_div(best->t0, tstep) + 1;
      Rat cand = Rat(k) * tstep;
      if (cand > best->t0 && cand < best->t1)
        return pt_edge(space, best->edge, cand);
      return pt_edge(space, best->edge, (best->t0 + best->t1) / 2);
    }
  }
}

ChartIndex::ChartIndex(const SpaceModel& space, const Atlas& atlas)
    : space_(space), atlas_(atlas) {
  if (space.kind != ModelKind::euclidean) return;
  lattice_ = true;
  for (const auto& ch : atlas.charts) {
    std::string key;
    for (const auto& c : ch.center.coords) key += rat_str(c) + ",";
    by_center_.emplace(std::move(key), ch.id);
  }
}

std::vector<int> ChartIndex::candidates(const Point& p) const {
  std::vector<int> out;
  if (!lattice_) {
    out.resize(atlas_.charts.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = (int)i;
    return out;
  }
  const Rat& step = atlas_.lattice_step;
  Rat rho = atlas_.charts.empty() ? step : atlas_.charts[0].radius;
  int dim = (int)p.coords.size();
  std::vector<long> kmin(dim), kmax(dim);
  for (int i = 0; i < dim; ++i) {
    kmin[i] = rat_ceil_div(p.coords[i] - rho, step);
    kmax[i] = rat_floor_div(p.coords[i] + rho, step);
  }
  std::vector<long> idx = kmin;
  while (true) {
    std::string key;
    for (int i = 0; i < dim; ++i) key += rat_str(Rat(idx[i]) * step) + ",";
    auto it = by_center_.find(key);
    if (it != by_center_.end()) out.push_back(it->second);
    int i = dim - 1;
    while (i >= 0 && idx[i] == kmax[i]) {
      idx[i] = kmin[i];
      --i;
    }
    if (i < 0) break;
    ++idx[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

Region atlas_intersect_region(const SpaceModel& space, const Chart& chart,
                              const Region& r) {
  switch (r.model) {
    case ModelKind::interval: {
      Region out;
      out.model = r.model;
      for (const auto& c : chart.region.intervals)
        for (const auto& p : r.intervals) {
          Rat lo = rat_max(c.lo, p.lo), hi = rat_min(c.hi, p.hi);
          if (lo > hi || (lo == hi && (p.lo_open || p.hi_open))) continue;
          out.intervals.push_back({lo, hi});
        }
      return out;
    }
    case ModelKind::euclidean: {
      Region out;
      out.model = r.model;
      for (const auto& box : chart.region.boxes) {
        Region cut = region_clip_box(space, r, box.lo, box.hi);
        out = region_union(space, out, cut);
      }
      return out;
    }
    default:
      return region_graph_intersect(space, chart.region, r);
  }
}

}  // namespace convexa
