#include "convexa/factorization.hpp"

#include <algorithm>
#include <map>

#include "convexa/errors.hpp"

namespace convexa {

namespace {

std::vector<int> image_ids_of(const SampledMap& map, const std::vector<int>& verts) {
  std::vector<int> ids;
  ids.reserve(verts.size());
  for (int v : verts) ids.push_back(map.img_id[v]);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<int> sorted_intersection(const std::vector<int>& a,
                                     const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

NeighborhoodFamily neighborhood_family(const SampledMap& map, int v, int depth) {
  NeighborhoodFamily fam;
  fam.vertex = v;
  for (int k = depth; k >= 1; --k) {
    fam.balls.push_back(map.ball(v, k));
    fam.images.push_back(image_ids_of(map, fam.balls.back()));
  }
  return fam;
}

OpennessResult is_locally_open_onto_image(const SampledMap& map, int depth) {
  if (depth < 1) throw SchemaError("depth must be >= 1");
  ImageMetric metric(map);
  OpennessResult res;

  // check(x2, j) relative to U: the image of N_j(x2) n U must contain every
  // image sample of f(U) strictly closer to f(x2) than T's nearest other
  // point.
  auto violates = [&](const std::vector<int>& U, const std::vector<int>& S_ids,
                      int x2, int j, int* bad_img) {
    std::vector<int> Nj = map.ball(x2, j);
    std::vector<int> TV = sorted_intersection(Nj, U);
    std::vector<int> T_ids = image_ids_of(map, TV);
    int fx2 = map.img_id[x2];
    // Nearest other point of T.
    int qa = -1;
    for (int t : T_ids) {
      if (t == fx2) continue;
      if (qa < 0 || metric.less(fx2, t, fx2, qa)) qa = t;
    }
    if (qa < 0) return false;  // T is the singleton {f(x2)}: nothing closer
    for (int s : S_ids) {
      if (std::binary_search(T_ids.begin(), T_ids.end(), s)) continue;
      if (metric.less(fx2, s, fx2, qa)) {
        *bad_img = s;
        return true;
      }
    }
    return false;
  };

  for (int x = 0; x < map.n_vertices; ++x) {
    bool pass = false;
    OpennessWitness w;
    for (int k = 1; k <= depth && !pass; ++k) {
      std::vector<int> U = map.ball(x, k);
      std::vector<int> S_ids = image_ids_of(map, U);
      bool ok = true;
      for (int x2 : U) {
        for (int j = 1; j <= depth; ++j) {
          int bad = -1;
          if (violates(U, S_ids, x2, j, &bad)) {
            ok = false;
            if (k == depth) {  // record the witness at the largest level
              w.vertex = x;
              w.inner_vertex = x2;
              w.level = j;
              w.image_id = bad;
            }
            break;
          }
        }
        if (!ok) break;
      }
      pass = ok;
    }
    if (!pass) {
      res.failing.push_back(x);
      if (res.open) {
        res.open = false;
        res.witness = w;
      }
    }
  }
  return res;
}

Factorization filtered_quotient(const SampledMap& map, int depth) {
  auto open = is_locally_open_onto_image(map, depth);
  if (!open.open)
    throw NotLocallyOpen("map is not locally open onto its image at vertex " +
                         std::to_string(open.witness.vertex));
  Factorization fac;
  fac.depth = depth;
  // Group by (image, image family at all levels).
  std::map<std::vector<int>, int> groups;  // flattened key -> class id
  fac.class_of.assign(map.n_vertices, -1);
  for (int v = 0; v < map.n_vertices; ++v) {
    NeighborhoodFamily fam = neighborhood_family(map, v, depth);
    std::vector<int> key = {map.img_id[v]};
    for (const auto& level : fam.images) {
      key.push_back(-1);  // level separator
      key.insert(key.end(), level.begin(), level.end());
    }
    auto it = groups.find(key);
    if (it == groups.end()) {
      it = groups.emplace(key, (int)fac.classes.size()).first;
      fac.classes.push_back({});
    }
    fac.class_of[v] = it->second;
    fac.classes[it->second].push_back(v);
  }
  // Canonical class order: by smallest member.
  std::vector<int> order(fac.classes.size());
  for (size_t c = 0; c < fac.classes.size(); ++c) order[c] = (int)c;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return fac.classes[a].front() < fac.classes[b].front();
  });
  std::vector<int> rank(fac.classes.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = (int)i;
  std::vector<std::vector<int>> classes(fac.classes.size());
  for (size_t c = 0; c < fac.classes.size(); ++c)
    classes[rank[c]] = std::move(fac.classes[c]);
  fac.classes = std::move(classes);
  for (int v = 0; v < map.n_vertices; ++v)
    fac.class_of[v] = rank[fac.class_of[v]];

  // Quotient adjacency = image of the domain adjacency.
  fac.quotient_adj.assign(fac.classes.size(), {});
  for (int v = 0; v < map.n_vertices; ++v)
    for (int u : map.adj[v]) {
      int a = fac.class_of[v], b = fac.class_of[u];
      if (a != b) fac.quotient_adj[a].push_back(b);
    }
  for (auto& nbrs : fac.quotient_adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  for (const auto& cls : fac.classes)
    fac.f_sharp.push_back(map.values[cls.front()]);

  // Openness surrogate (q maps neighborhoods onto neighborhoods): every
  // vertex sees every class adjacent to its own through one of its own
  // neighbors. Reported, not enforced.
  for (int v = 0; v < map.n_vertices && fac.openness_onto_quotient; ++v) {
    int c = fac.class_of[v];
    for (int nb_class : fac.quotient_adj[c]) {
      bool seen = false;
      for (int u : map.adj[v])
        if (fac.class_of[u] == nb_class) {
          seen = true;
          break;
        }
      if (!seen) {
        fac.openness_onto_quotient = false;
        break;
      }
    }
  }
  // Local injectivity of f_sharp: adjacent classes carry distinct values.
  for (size_t c = 0; c < fac.classes.size() && fac.f_sharp_locally_injective; ++c)
    for (int nb : fac.quotient_adj[c])
      if (pt_eq(fac.f_sharp[c], fac.f_sharp[nb]))
        fac.f_sharp_locally_injective = false;
  return fac;
}

Factorization monotone_light(const SampledMap& map) {
  Factorization fac;
  // Union-find over edges inside one fiber.
  std::vector<int> parent(map.n_vertices);
  for (int v = 0; v < map.n_vertices; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int v = 0; v < map.n_vertices; ++v)
    for (int u : map.adj[v])
      if (map.img_id[u] == map.img_id[v]) {
        int a = find(u), b = find(v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::map<int, int> roots;
  fac.class_of.assign(map.n_vertices, -1);
  for (int v = 0; v < map.n_vertices; ++v) {
    int r = find(v);
    auto it = roots.find(r);
    if (it == roots.end()) {
      it = roots.emplace(r, (int)fac.classes.size()).first;
      fac.classes.push_back({});
    }
    fac.class_of[v] = it->second;
    fac.classes[it->second].push_back(v);
  }
  fac.quotient_adj.assign(fac.classes.size(), {});
  for (int v = 0; v < map.n_vertices; ++v)
    for (int u : map.adj[v]) {
      int a = fac.class_of[v], b = fac.class_of[u];
      if (a != b) fac.quotient_adj[a].push_back(b);
    }
  for (auto& nbrs : fac.quotient_adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  for (const auto& cls : fac.classes)
    fac.f_sharp.push_back(map.values[cls.front()]);
  return fac;
}

bool partition_refines(const Factorization& finer, const Factorization& coarser) {
  for (const auto& cls : finer.classes) {
    int target = coarser.class_of[cls.front()];
    for (int v : cls)
      if (coarser.class_of[v] != target) return false;
  }
  return true;
}

}  // namespace convexa
