#include "convexa/etale.hpp"

#include <algorithm>
#include <sstream>

#include "convexa/errors.hpp"

namespace convexa {

namespace {

std::string offset_key(const Region& r, const Point& base) {
  if (r.model != ModelKind::euclidean && r.model != ModelKind::interval)
    return {};
  std::ostringstream os;
  auto put = [&](const Rat& v, const Rat& b) { os << rat_str(v - b) << ","; };
  for (const auto& box : r.boxes) {
    os << "B";
    for (size_t i = 0; i < box.lo.size(); ++i) put(box.lo[i], base.coords[i]);
    for (size_t i = 0; i < box.hi.size(); ++i) put(box.hi[i], base.coords[i]);
    if (box.diag_cut) {
      Rat bsum = 0;
      for (const auto& c : base.coords) bsum += c;
      put(*box.diag_cut, bsum);
    }
    os << ";";
  }
  for (const auto& poly : r.polys) {
    os << "P";
    std::vector<std::string> vs;
    for (const auto& v : poly.verts) {
      std::ostringstream vo;
      for (size_t i = 0; i < v.size(); ++i) vo << rat_str(v[i] - base.coords[i]) << ",";
      vs.push_back(vo.str());
    }
    std::sort(vs.begin(), vs.end());
    for (const auto& s : vs) os << s << "|";
    os << ";";
  }
  for (const auto& piece : r.intervals) {
    os << "I" << rat_str(piece.lo - base.x) << "," << rat_str(piece.hi - base.x)
       << ";";
  }
  return os.str();
}

}  // namespace

bool ConvexImageCache::convex(const SpaceModel& target, const Region& r,
                              const Point& base) {
  std::string key = offset_key(r, base);
  if (!key.empty()) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  bool result;
  try {
    result = is_convex(target, r);
  } catch (const NonUniqueGeodesic&) {
    result = false;
  }
  if (!key.empty()) memo_.emplace(std::move(key), result);
  return result;
}

namespace {

// Chart lookup helper: maps region corners to candidate atlas charts. For
// lattice box atlases candidates come from index arithmetic instead of a
// full scan.
struct ChartFinder {
  const SpaceModel& target;
  const Atlas& atlas;
  ChartIndex index{target, atlas};

  int find_containing(const Region& r) const {
    auto corners = region_corners(target, r);
    if (corners.empty()) return -1;
    for (int c : index.candidates(corners.front())) {
      if (!region_contains(target, atlas.charts[c].region, corners.front()))
        continue;
      bool all = true;
      for (const auto& p : corners)
        if (!region_contains(target, atlas.charts[c].region, p)) {
          all = false;
          break;
        }
      if (all) {
        if (target.is_graph()) {
          // Fragment containment needs more than corners.
          Region closed_chart = region_closure(atlas.charts[c].region);
          bool frag_ok = region_graph_subset(region_closure(r), closed_chart);
          if (!frag_ok) continue;
        }
        return c;
      }
    }
    return -1;
  }
};

}  // namespace

EtaleCertificate verify_etale(const SampledMap& map, const Atlas& atlas,
                              const EtaleConfig& cfg) {
  const SpaceModel& target = *map.target;
  // The domain must be connected.
  if (map.n_vertices == 0) throw NotEtale("empty domain");
  {
    auto whole = map.ball(0, map.n_vertices);
    if ((int)whole.size() != map.n_vertices)
      throw NotEtale("domain is not connected");
  }
  EtaleCertificate cert;
  ConvexImageCache cache;
  ChartFinder finder{target, atlas};

  auto try_lift = [&](const std::vector<int>& verts) -> std::optional<Lift> {
    // Injectivity on the vertex set.
    std::vector<int> ids;
    for (int v : verts) ids.push_back(map.img_id[v]);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      return std::nullopt;
    Region image = image_region(map, verts);
    if (!cache.convex(target, image, map.values[verts.front()]))
      return std::nullopt;
    int chart = finder.find_containing(image);
    if (chart < 0) return std::nullopt;
    Lift lift;
    lift.verts = verts;
    lift.image = std::move(image);
    lift.target_chart = chart;
    return lift;
  };

  std::map<std::vector<int>, int> dedup;
  cert.lift_of.assign(map.n_vertices, -1);
  auto add_lift = [&](Lift lift) {
    auto it = dedup.find(lift.verts);
    if (it == dedup.end()) {
      lift.id = (int)cert.lifts.size();
      it = dedup.emplace(lift.verts, lift.id).first;
      cert.lifts.push_back(std::move(lift));
    }
    return it->second;
  };

  std::optional<Lift> global;
  if (cfg.try_global && map.injective && map.n_vertices <= cfg.global_cap) {
    std::vector<int> all(map.n_vertices);
    for (int v = 0; v < map.n_vertices; ++v) all[v] = v;
    global = try_lift(all);
  }
  for (int v = 0; v < map.n_vertices; ++v) {
    if (global) {
      cert.lift_of[v] = add_lift(*global);
      continue;
    }
    bool found = false;
    for (int k = cfg.lift_k_max; k >= 1 && !found; --k) {
      auto lift = try_lift(map.ball(v, k));
      if (lift) {
        cert.lift_of[v] = add_lift(std::move(*lift));
        found = true;
      }
    }
    if (!found)
      throw NotEtale("no injective convex chart lift at vertex " +
                     std::to_string(v));
  }

  // Fiber table.
  std::map<int, std::vector<int>> fibers;
  for (int v = 0; v < map.n_vertices; ++v) fibers[map.img_id[v]].push_back(v);
  for (const auto& [img, fiber] : fibers) {
    cert.fiber_sizes.push_back({img, (int)fiber.size()});
    cert.max_fiber = std::max(cert.max_fiber, (int)fiber.size());
  }

  // Closedness margins: distance from each image point to the nearest sample
  // outside its fiber's lift cover, measured within the margin ring.
  ImageMetric metric(map);
  for (const auto& [img, fiber] : fibers) {
    std::vector<char> covered(map.n_vertices, 0);
    for (int f : fiber)
      for (int u : cert.lifts[cert.lift_of[f]].verts) covered[u] = 1;
    std::optional<Rat> margin;
    for (int f : fiber) {
      for (int u : map.ball(f, cfg.margin_ring)) {
        if (covered[u]) continue;
        Rat d = metric.dist_or_dist2(img, map.img_id[u]);
        if (!margin || d < *margin) margin = d;
      }
    }
    if (margin) {
      cert.closedness_margins.push_back({img, *margin});
      if (*margin <= 0) cert.closed_ok = false;
    }
  }
  if (!cert.closed_ok)
    throw NotEtale("image of the lift-cover complement touches a fiber value");

  // Prop.-9 disjointness: lifts that are jointly non-injective must be
  // disjoint. Candidate pairs share an image value with distinct preimages.
  std::map<std::pair<int, int>, bool> candidate;
  for (const auto& [img, fiber] : fibers) {
    if (fiber.size() < 2) continue;
    for (size_t i = 0; i < fiber.size(); ++i)
      for (size_t j = i + 1; j < fiber.size(); ++j) {
        int a = cert.lift_of[fiber[i]], b = cert.lift_of[fiber[j]];
        if (a != b) candidate[{std::min(a, b), std::max(a, b)}] = true;
      }
  }
  // Also: any two lifts both containing preimages of a common value.
  {
    std::map<int, std::vector<int>> img_lifts;
    for (const auto& lift : cert.lifts)
      for (int v : lift.verts) img_lifts[map.img_id[v]].push_back(lift.id);
    for (auto& [img, ls] : img_lifts) {
      std::sort(ls.begin(), ls.end());
      ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
      if ((int)fibers[img].size() < 2) continue;
      for (size_t i = 0; i < ls.size(); ++i)
        for (size_t j = i + 1; j < ls.size(); ++j) {
          // Jointly non-injective only if the two lifts hold distinct
          // preimages of img.
          int pi = -1, pj = -1;
          for (int v : cert.lifts[ls[i]].verts)
            if (map.img_id[v] == img) pi = v;
          for (int v : cert.lifts[ls[j]].verts)
            if (map.img_id[v] == img && v != pi) pj = v;
          if (pi >= 0 && pj >= 0) candidate[{ls[i], ls[j]}] = true;
        }
    }
  }
  for (const auto& [pair, _] : candidate) {
    const auto& A = cert.lifts[pair.first].verts;
    const auto& B = cert.lifts[pair.second].verts;
    std::vector<int> common;
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(),
                          std::back_inserter(common));
    if (!common.empty()) {
      cert.prop9_ok = false;
      cert.prop9_witness = pair;
      throw NotEtale("jointly non-injective lifts " +
                     std::to_string(pair.first) + "," +
                     std::to_string(pair.second) + " overlap");
    }
  }
  return cert;
}

LiftedGeo::LiftedGeo(const SampledMap& map, EtaleCertificate cert)
    : map_(map), cert_(std::move(cert)) {
  vert_lifts_.assign(map_.n_vertices, {});
  for (const auto& lift : cert_.lifts)
    for (int v : lift.verts) vert_lifts_[v].push_back(lift.id);
}

bool LiftedGeo::sheets_compatible(int c1, int c2) const {
  if (c1 < 0 || c2 < 0 || c1 == c2) return true;
  const auto& A = cert_.lifts[c1].verts;
  const auto& B = cert_.lifts[c2].verts;
  std::vector<int> common;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(),
                        std::back_inserter(common));
  return !common.empty();
}

std::vector<int> LiftedGeo::shared_vertices(int c1, int c2) const {
  const auto& A = cert_.lifts[c1].verts;
  const auto& B = cert_.lifts[c2].verts;
  std::vector<int> common;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(),
                        std::back_inserter(common));
  return common;
}

bool LiftedGeo::chart_contains(int chart, const PathPoint& p) const {
  if (!sheets_compatible(p.sheet, chart)) return false;
  return region_contains(*map_.target, cert_.lifts[chart].image, p.y);
}

std::vector<int> LiftedGeo::charts_containing(const PathPoint& p) const {
  std::vector<int> out;
  if (p.sheet >= 0) {
    std::vector<int> cands = nerve_neighbors(p.sheet);
    cands.push_back(p.sheet);
    std::sort(cands.begin(), cands.end());
    for (int c : cands)
      if (region_contains(*map_.target, cert_.lifts[c].image, p.y))
        out.push_back(c);
    return out;
  }
  if (map_.locator) {
    std::vector<int> cands;
    for (int v : map_.locator(p.y))
      cands.insert(cands.end(), vert_lifts_[v].begin(), vert_lifts_[v].end());
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (int c : cands)
      if (region_contains(*map_.target, cert_.lifts[c].image, p.y))
        out.push_back(c);
    return out;
  }
  for (const auto& lift : cert_.lifts)
    if (region_contains(*map_.target, lift.image, p.y)) out.push_back(lift.id);
  return out;
}

std::vector<int> LiftedGeo::nerve_neighbors(int chart) const {
  std::vector<int> out;
  for (int v : cert_.lifts[chart].verts)
    out.insert(out.end(), vert_lifts_[v].begin(), vert_lifts_[v].end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), chart), out.end());
  return out;
}

PathPoint LiftedGeo::overlap_representative(int c1, int c2) const {
  auto common = shared_vertices(c1, c2);
  if (common.empty()) throw InternalError("overlap of disjoint lifts");
  int best = common.front();
  for (int v : common) {
    if (pt_less(map_.values[v], map_.values[best]) ||
        (pt_eq(map_.values[v], map_.values[best]) && v < best))
      best = v;
  }
  return {map_.values[best], c2};
}

Segment LiftedGeo::chart_segment(int chart, const PathPoint& a,
                                 const PathPoint& b) const {
  (void)chart;
  return segment(*map_.target, a.y, b.y);
}

Region LiftedGeo::overlap_region(int c1, int c2) const {
  const SpaceModel& target = *map_.target;
  Region out;
  out.model = target.kind;
  if (!sheets_compatible(c1, c2)) return out;
  const Region& A = cert_.lifts[c1].image;
  const Region& B = cert_.lifts[c2].image;
  if (target.is_graph()) return region_graph_intersect(target, A, B);
  if (target.kind == ModelKind::interval) {
    for (const auto& p : A.intervals)
      for (const auto& q : B.intervals) {
        Rat lo = rat_max(p.lo, q.lo), hi = rat_min(p.hi, q.hi);
        if (lo <= hi) out.intervals.push_back({lo, hi});
      }
    return out;
  }
  for (const auto& p : A.boxes)
    for (const auto& q : B.boxes) {
      BoxPiece nb = p;
      bool ok = true;
      for (size_t i = 0; i < nb.lo.size(); ++i) {
        nb.lo[i] = rat_max(p.lo[i], q.lo[i]);
        nb.hi[i] = rat_min(p.hi[i], q.hi[i]);
        if (nb.lo[i] > nb.hi[i]) ok = false;
      }
      if (p.diag_cut || q.diag_cut) {
        Rat cut = p.diag_cut ? *p.diag_cut : *q.diag_cut;
        if (p.diag_cut && q.diag_cut) cut = rat_min(*p.diag_cut, *q.diag_cut);
        nb.diag_cut = cut;
      }
      if (ok) out.boxes.push_back(nb);
    }
  // Polytope pieces participate only via 2D clipping.
  for (const auto& p : A.polys)
    for (const auto& q : B.polys) {
      if (p.verts.empty() || p.verts[0].size() != 2) continue;
      Region rp;
      rp.model = ModelKind::euclidean;
      rp.polys.push_back(q);
      VecR lo = p.hull2d.empty() ? p.verts[0] : p.hull2d[0], hi = lo;
      for (const auto& v : (p.hull2d.empty() ? p.verts : p.hull2d))
        for (int i = 0; i < 2; ++i) {
          lo[i] = rat_min(lo[i], v[i]);
          hi[i] = rat_max(hi[i], v[i]);
        }
      Region cut = region_clip_box(target, rp, lo, hi);
      out = region_union(target, out, cut);
    }
  return out;
}

bool LiftedGeo::same_point(const PathPoint& a, const PathPoint& b) const {
  return pt_eq(a.y, b.y) && sheets_compatible(a.sheet, b.sheet);
}

std::optional<std::pair<Rat, Point>> LiftedGeo::leg_meet_last(
    const Segment& leg_a, int chart_a, const Segment& leg_b,
    int chart_b) const {
  if (!sheets_compatible(chart_a, chart_b)) return std::nullopt;
  return model_leg_meet_last(*map_.target, leg_a, leg_b);
}

LiftedGeo lift_atlas(const SampledMap& map, const EtaleCertificate& cert) {
  return LiftedGeo(map, cert);
}

AxiomReport check_axioms_lifted(const LiftedGeo& geo,
                                const std::vector<int>& sample_verts) {
  const SampledMap& map = geo.map();
  const SpaceModel& target = *map.target;
  const auto& lifts = geo.certificate().lifts;
  AxiomReport report;
  std::map<std::string, AxiomEntry> tally;
  auto record = [&](const std::string& name, bool pass, const std::string& w) {
    auto& e = tally[name];
    e.check = name;
    ++e.checked;
    if (!pass && e.pass) {
      e.pass = false;
      e.witness = w;
    }
  };

  // (C3): every sample vertex has a lift with convex image; shrinking the
  // image by a window keeps it convex.
  for (int v : sample_verts) {
    int lid = geo.certificate().lift_of[v];
    record("C3_lift_cover", lid >= 0, "v" + std::to_string(v));
    if (lid < 0) continue;
    const Region& image = lifts[lid].image;
    record("C3_lift_image_convex", is_convex(target, image),
           "v" + std::to_string(v));
    const Point& base = map.values[v];
    Region shrunk;
    if (target.kind == ModelKind::euclidean) {
      Rat rho = rat(1, 2);
      // Window at half the image spread around the base point.
      auto corners = region_corners(target, image);
      Rat spread = 0;
      for (const auto& c : corners)
        for (size_t i = 0; i < c.coords.size(); ++i)
          spread = rat_max(spread, rat_abs(c.coords[i] - base.coords[i]));
      if (spread > 0) rho = spread / 2;
      VecR lo = base.coords, hi = base.coords;
      for (auto& x : lo) x -= rho;
      for (auto& x : hi) x += rho;
      shrunk = region_clip_box(target, image, lo, hi);
    } else if (target.is_graph()) {
      auto corners = region_corners(target, image);
      Rat spread = 0;
      for (const auto& c : corners)
        spread = rat_max(spread, graph_distance(target, base, c));
      if (spread == 0) spread = 1;
      shrunk = region_graph_intersect(
          target, image, region_graph_ball(target, base, spread / 2, false));
    } else {
      shrunk = image;
    }
    record("C3_lift_shrunk_admissible", !shrunk.empty() && is_convex(target, shrunk),
           "v" + std::to_string(v));
    // (G1) surrogate: hulls of finite image subsets stay inside the chart
    // image, closed and finitely representable.
    auto corners = region_corners(target, image);
    if (corners.size() >= 2) {
      std::vector<Point> probe = {map.values[v], corners.front(), corners.back()};
      bool g1 = true;
      try {
        Region hull = region_closure(convex_hull(target, probe));
        g1 = convex_region_includes(target, region_closure(image), hull);
      } catch (const HullNotFinitelyRepresentable&) {
        g1 = false;
      }
      record("G1_hulls_compact_surrogate", g1, "v" + std::to_string(v));
    }
  }

  // Chartwise segment axioms on sample pairs sharing a lift as domain
  // vertices (fiber sheets stay separate).
  for (size_t i = 0; i < sample_verts.size(); ++i) {
    for (size_t j = i + 1; j < sample_verts.size(); ++j) {
      int u = sample_verts[i], v = sample_verts[j];
      if (map.img_id[u] == map.img_id[v]) continue;
      int lift = -1;
      for (const auto& cand : lifts)
        if (std::binary_search(cand.verts.begin(), cand.verts.end(), u) &&
            std::binary_search(cand.verts.begin(), cand.verts.end(), v)) {
          lift = cand.id;
          break;
        }
      if (lift < 0) continue;
      ++report.pairs_checked;
      Segment seg;
      try {
        seg = segment(target, map.values[u], map.values[v]);
      } catch (const NonUniqueGeodesic&) {
        ++report.pairs_skipped;
        continue;
      }
      const Region& image = lifts[lift].image;
      record("C1_lifted_segment_in_chart",
             region_covers_segment(target, region_closure(image), seg),
             "v" + std::to_string(u) + ",v" + std::to_string(v));
      record("C1_lifted_segment_convex",
             is_convex(target, region_of_segment(target, seg)),
             "v" + std::to_string(u) + ",v" + std::to_string(v));
      Segment rev = segment(target, map.values[v], map.values[u]);
      record("Eq3_lifted_symmetry", seg_set_eq(target, seg, rev),
             "v" + std::to_string(u));
      Segment dg = segment(target, map.values[u], map.values[u]);
      record("Eq4_lifted_degenerate", seg_length(target, dg) == 0,
             "v" + std::to_string(u));
      // (C2) via split at the midpoint.
      Point mid = seg_interp(target, seg, rat(1, 2));
      auto halves = split(target, seg, mid);
      record("C2_lifted_split",
             pt_eq(halves.first.b, mid) && pt_eq(halves.second.a, mid),
             "v" + std::to_string(u));
      // Eq. 5 double characterization on the quartile triple.
      Point q1 = seg_interp(target, seg, rat(1, 4));
      Point q3 = seg_interp(target, seg, rat(3, 4));
      bool less_ok =
          segment_order(target, seg, q1, q3) == Ordering::less &&
          seg_contains(target, segment(target, map.values[u], q3), q1) &&
          seg_contains(target, segment(target, q1, map.values[v]), q3);
      record("Eq5_lifted_double_characterization", less_ok,
             "v" + std::to_string(u));
    }
  }
  for (auto& [name, entry] : tally) report.entries.push_back(entry);
  return report;
}

}  // namespace convexa
