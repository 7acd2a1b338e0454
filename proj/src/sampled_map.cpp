#include "convexa/sampled_map.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "convexa/errors.hpp"
#include "convexa/hull.hpp"

namespace convexa {

void SampledMap::finalize() {
  if ((int)values.size() != n_vertices)
    throw SchemaError("value table size mismatch");
  for (const auto& p : values) check_point(*target, p);
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  // Deduplicate image points via a canonical string key.
  std::map<std::string, int> seen;
  img_id.assign(n_vertices, -1);
  img_points.clear();
  for (int v = 0; v < n_vertices; ++v) {
    std::string key = pt_str(values[v]);
    auto it = seen.find(key);
    if (it == seen.end()) {
      it = seen.emplace(key, (int)img_points.size()).first;
      img_points.push_back(values[v]);
    }
    img_id[v] = it->second;
  }
  injective = (int)img_points.size() == n_vertices;
  vert_cells.assign(n_vertices, {});
  for (int c = 0; c < (int)cells.size(); ++c)
    for (int v : cells[c].verts) vert_cells[v].push_back(c);
}

std::vector<int> SampledMap::ball(int v, int radius) const {
  std::vector<int> dist(n_vertices, -1);
  std::vector<int> out = {v};
  dist[v] = 0;
  std::queue<int> q;
  q.push(v);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (dist[u] == radius) continue;
    for (int w : adj[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        out.push_back(w);
        q.push(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SampledMap make_sampled_map(int n_vertices,
                            const std::vector<std::pair<int, int>>& edges,
                            std::vector<Cell> cells, const SpaceModel& target,
                            std::vector<Point> values) {
  SampledMap m;
  m.n_vertices = n_vertices;
  m.adj.assign(n_vertices, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices || u == v)
      throw SchemaError("bad adjacency pair");
    m.adj[u].push_back(v);
    m.adj[v].push_back(u);
  }
  for (const auto& c : cells)
    for (int v : c.verts)
      if (v < 0 || v >= n_vertices) throw SchemaError("bad cell vertex");
  m.cells = std::move(cells);
  m.target = &target;
  m.values = std::move(values);
  m.finalize();
  return m;
}

Region image_region(const SampledMap& map, const std::vector<int>& verts) {
  const SpaceModel& target = *map.target;
  Region region;
  region.model = target.kind;
  std::vector<char> in_set(map.n_vertices, 0);
  for (int v : verts) in_set[v] = 1;
  std::vector<char> covered(map.n_vertices, 0);
  std::vector<char> cell_done(map.cells.size(), 0);
  for (int v : verts) {
    for (int c : map.vert_cells[v]) {
      if (cell_done[c]) continue;
      bool inside = true;
      for (int u : map.cells[c].verts)
        if (!in_set[u]) {
          inside = false;
          break;
        }
      if (!inside) continue;
      cell_done[c] = 1;
      for (int u : map.cells[c].verts) covered[u] = 1;
      const Cell& cell = map.cells[c];
      if (cell.box_hint) {
        region.boxes.push_back(*cell.box_hint);
      } else if (target.kind == ModelKind::euclidean) {
        std::vector<VecR> pts;
        for (int u : cell.verts) pts.push_back(map.values[u].coords);
        region.polys.push_back(make_poly(std::move(pts)));
      } else if (target.kind == ModelKind::interval) {
        Rat lo = map.values[cell.verts[0]].x, hi = lo;
        for (int u : cell.verts) {
          lo = rat_min(lo, map.values[u].x);
          hi = rat_max(hi, map.values[u].x);
        }
        region.intervals.push_back({lo, hi});
      } else {
        // Graph target: a cell's image is the hull of its vertex images.
        std::vector<Point> pts;
        for (int u : cell.verts) pts.push_back(map.values[u]);
        Region hull = convex_hull(target, pts);
        region = region_union(target, region, hull);
      }
    }
  }
  for (int v : verts)
    if (!covered[v])
      region = region_union(target, region, region_point(target, map.values[v]));
  if (target.is_graph()) {
    std::vector<EdgeFrag> efs;
    for (const auto& f : region.frags) efs.push_back({f.edge, f.t0, f.t1});
    auto norm = frags_normalize(efs);
    region.frags.clear();
    for (const auto& f : norm) region.frags.push_back({f.edge, f.t0, f.t1});
  }
  return region;
}

ImageMetric::ImageMetric(const SampledMap& map) : map_(map) {
  const SpaceModel& target = *map.target;
  if (target.kind == ModelKind::euclidean || target.kind == ModelKind::interval) {
    // Try a common denominator small enough for int64 coordinates.
    mpz_class lcm(1);
    bool ok = true;
    auto feed = [&](const Rat& r) { mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den_mpz_t()); };
    for (const auto& p : map.img_points) {
      if (target.kind == ModelKind::interval)
        feed(p.x);
      else
        for (const auto& c : p.coords) feed(c);
    }
    if (mpz_cmp_ui(lcm.get_mpz_t(), 1u << 20) > 0) ok = false;
    if (ok) {
      icoords_.reserve(map.img_points.size());
      for (const auto& p : map.img_points) {
        std::array<int64_t, 4> a = {0, 0, 0, 0};
        auto put = [&](int i, const Rat& r) {
          Rat scaled = r * Rat(lcm);
          if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p()) {
            ok = false;
            return;
          }
          long val = scaled.get_num().get_si();
          if (val > (1L << 30) || val < -(1L << 30)) ok = false;
          a[i] = val;
        };
        if (target.kind == ModelKind::interval) {
          put(0, p.x);
        } else {
          for (size_t i = 0; i < p.coords.size() && i < 4; ++i)
            put((int)i, p.coords[i]);
          if (p.coords.size() > 4) ok = false;
        }
        icoords_.push_back(a);
        if (!ok) break;
      }
    }
    use_int_ = ok;
    return;
  }
  // Graph target: pairwise exact metric over the distinct image points.
  int m = (int)map.img_points.size();
  graph_d_.assign(m, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      graph_d_[i][j] = graph_d_[j][i] =
          graph_distance(target, map.img_points[i], map.img_points[j]);
}

int64_t ImageMetric::idist2(int a, int b) const {
  int64_t s = 0;
  for (int i = 0; i < 4; ++i) {
    int64_t d = icoords_[a][i] - icoords_[b][i];
    s += d * d;
  }
  return s;
}

Rat ImageMetric::rdist2(int a, int b) const {
  const Point& pa = map_.img_points[a];
  const Point& pb = map_.img_points[b];
  if (pa.model == ModelKind::interval) {
    Rat d = pa.x - pb.x;
    return d * d;
  }
  return vec_dist2(pa.coords, pb.coords);
}

bool ImageMetric::less(int a, int b, int c, int e) const {
  if (use_int_) return idist2(a, b) < idist2(c, e);
  if (!graph_d_.empty()) return graph_d_[a][b] < graph_d_[c][e];
  return rdist2(a, b) < rdist2(c, e);
}

Rat ImageMetric::dist_or_dist2(int a, int b) const {
  if (!graph_d_.empty()) return graph_d_[a][b];
  if (use_int_) return Rat(idist2(a, b));
  return rdist2(a, b);
}

SampledMap simplex_grid_map(int n, int r, const SpaceModel& target) {
  if (n < 1 || n > 3) throw SchemaError("simplex grid supports n in 1..3");
  if (r < 2) throw ResolutionTooCoarse("resolution must be at least 2");
  // Enumerate lattice points with sum <= r, lexicographically.
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> pts;
  std::vector<int> k(n, 0);
  while (true) {
    int sum = 0;
    for (int i = 0; i < n; ++i) sum += k[i];
    if (sum <= r) {
      index[k] = (int)pts.size();
      pts.push_back(k);
    }
    int i = n - 1;
    while (i >= 0 && k[i] == r) k[i--] = 0;
    if (i < 0) break;
    ++k[i];
  }
  int V = (int)pts.size();
  std::vector<std::pair<int, int>> edges;
  std::vector<int> delta(n, -1);
  for (int v = 0; v < V; ++v) {
    // All L-infinity offsets in {-1,0,1}^n, upper half to avoid duplicates.
    std::fill(delta.begin(), delta.end(), -1);
    while (true) {
      bool nonzero = false, upper = false;
      for (int i = 0; i < n; ++i) {
        if (delta[i] != 0) nonzero = true;
        if (delta[i] > 0) {
          upper = true;
          break;
        }
        if (delta[i] < 0) break;
      }
      if (nonzero && upper) {
        std::vector<int> w(n);
        bool valid = true;
        int sum = 0;
        for (int i = 0; i < n; ++i) {
          w[i] = pts[v][i] + delta[i];
          if (w[i] < 0) valid = false;
          sum += w[i];
        }
        if (valid && sum <= r) {
          auto it = index.find(w);
          if (it != index.end()) edges.push_back({v, it->second});
        }
      }
      int i = n - 1;
      while (i >= 0 && delta[i] == 1) delta[i--] = -1;
      if (i < 0) break;
      ++delta[i];
    }
  }
  // Cells: clipped boxes with base `k`; vertex set = corners with sum <= r.
  std::vector<Cell> cells;
  for (int v = 0; v < V; ++v) {
    const auto& base = pts[v];
    int bsum = 0;
    for (int i = 0; i < n; ++i) bsum += base[i];
    if (bsum >= r) continue;  // no room for any corner above the base
    Cell cell;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> w(n);
      int sum = 0;
      for (int i = 0; i < n; ++i) {
        w[i] = base[i] + ((mask >> i) & 1);
        sum += w[i];
      }
      if (sum > r) continue;
      auto it = index.find(w);
      if (it != index.end()) cell.verts.push_back(it->second);
    }
    if ((int)cell.verts.size() < 2) continue;
    VecR lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = rat(base[i], r);
      hi[i] = rat(base[i] + 1, r);
    }
    BoxPiece box{lo, hi, false, std::nullopt};
    if (bsum + n > r) box.diag_cut = Rat(1);
    cell.box_hint = box;
    cells.push_back(std::move(cell));
  }
  std::vector<Point> values;
  for (const auto& p : pts) {
    VecR c(n);
    for (int i = 0; i < n; ++i) c[i] = rat(p[i], r);
    values.push_back(pt_euclid(c));
  }
  SampledMap m = make_sampled_map(V, edges, std::move(cells), target,
                                  std::move(values));
  // Lattice locator: candidate vertices near a target point.
  std::map<std::vector<int>, int> idx_copy = index;
  int rr = r, nn = n;
  m.locator = [idx_copy, rr, nn](const Point& p) {
    std::vector<int> out;
    if ((int)p.coords.size() != nn) return out;
    std::vector<long> fl(nn);
    for (int i = 0; i < nn; ++i) fl[i] = rat_floor_div(p.coords[i], Rat(1, rr));
    std::vector<int> k(nn);
    for (int d = 0; d < (1 << nn); ++d) {
      bool valid = true;
      for (int i = 0; i < nn; ++i) {
        long val = fl[i] + ((d >> i) & 1);
        if (val < 0 || val > rr) valid = false;
        k[i] = (int)val;
      }
      if (!valid) continue;
      auto it = idx_copy.find(k);
      if (it != idx_copy.end()) out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return m;
}

SampledMap grid_region_map_2d(
    const VecR& lo, const VecR& hi, const Rat& h,
    const std::function<bool(const VecR&)>& member, const SpaceModel& target,
    const std::function<Point(const VecR&)>& embed) {
  long i0 = rat_ceil_div(lo[0], h), i1 = rat_floor_div(hi[0], h);
  long j0 = rat_ceil_div(lo[1], h), j1 = rat_floor_div(hi[1], h);
  std::map<std::pair<long, long>, int> index;
  std::vector<std::pair<long, long>> pts;
  for (long i = i0; i <= i1; ++i)
    for (long j = j0; j <= j1; ++j) {
      VecR p = {Rat(i) * h, Rat(j) * h};
      if (member(p)) {
        index[{i, j}] = (int)pts.size();
        pts.push_back({i, j});
      }
    }
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < (int)pts.size(); ++v) {
    auto [i, j] = pts[v];
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        if (di < 0 || (di == 0 && dj < 0)) continue;  // upper half
        auto it = index.find({i + di, j + dj});
        if (it != index.end()) edges.push_back({v, it->second});
      }
  }
  std::vector<Cell> cells;
  for (int v = 0; v < (int)pts.size(); ++v) {
    auto [i, j] = pts[v];
    Cell cell;
    bool full = true;
    for (int di = 0; di <= 1 && full; ++di)
      for (int dj = 0; dj <= 1; ++dj) {
        auto it = index.find({i + di, j + dj});
        if (it == index.end()) {
          full = false;
          break;
        }
        cell.verts.push_back(it->second);
      }
    if (!full) continue;
    // Image-piece hints only make sense when values are the inclusion.
    if (!embed)
      cell.box_hint = BoxPiece{{Rat(i) * h, Rat(j) * h},
                               {Rat(i + 1) * h, Rat(j + 1) * h},
                               false,
                               std::nullopt};
    cells.push_back(std::move(cell));
  }
  std::vector<Point> values;
  for (auto [i, j] : pts) {
    VecR p = {Rat(i) * h, Rat(j) * h};
    values.push_back(embed ? embed(p) : pt_euclid(p));
  }
  SampledMap m = make_sampled_map((int)pts.size(), edges, std::move(cells),
                                  target, std::move(values));
  if (!embed) {
    std::map<std::pair<long, long>, int> idx_copy = index;
    Rat hh = h;
    m.locator = [idx_copy, hh](const Point& p) {
      std::vector<int> out;
      if (p.coords.size() != 2) return out;
      long fi = rat_floor_div(p.coords[0], hh);
      long fj = rat_floor_div(p.coords[1], hh);
      for (int di = 0; di <= 1; ++di)
        for (int dj = 0; dj <= 1; ++dj) {
          auto it = idx_copy.find({fi + di, fj + dj});
          if (it != idx_copy.end()) out.push_back(it->second);
        }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    };
  }
  return m;
}

}  // namespace convexa
