#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "convexa/errors.hpp"
#include "convexa/etale.hpp"
#include "convexa/factorization.hpp"
#include "oracles.hpp"

using namespace convexa;

namespace {

// 1D grid map x -> f(x) on [lo, hi] with spacing h; path-graph domain.
SampledMap grid_map_1d(const SpaceModel& target, const Rat& lo, const Rat& hi,
                       const Rat& h, const std::function<Point(const Rat&)>& f) {
  long n = rat_floor_div(hi - lo, h) + 1;
  std::vector<std::pair<int, int>> edges;
  std::vector<Cell> cells;
  std::vector<Point> values;
  for (long i = 0; i < n; ++i) {
    if (i + 1 < n) {
      edges.push_back({(int)i, (int)(i + 1)});
      cells.push_back({{(int)i, (int)(i + 1)}, std::nullopt});
    }
    values.push_back(f(lo + Rat(i) * h));
  }
  return make_sampled_map((int)n, edges, std::move(cells), target,
                          std::move(values));
}

// Cycle-domain map onto a polyhedral cycle target (vertex k -> target vertex
// image[k]).
SampledMap cycle_map(const SpaceModel& target, const std::vector<int>& image) {
  int n = (int)image.size();
  std::vector<std::pair<int, int>> edges;
  std::vector<Cell> cells;
  std::vector<Point> values;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n});
    cells.push_back({{i, (i + 1) % n}, std::nullopt});
    values.push_back(pt_vertex(image[i], target.kind));
  }
  return make_sampled_map(n, edges, std::move(cells), target, std::move(values));
}

SpaceModel cycle_space(int m) {
  std::vector<GraphEdge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({i, (i + 1) % m, rat(1)});
  return make_polyhedral(m, edges);
}

// Independent brute-force depth-d partition: pairwise comparison with
// test-side BFS balls and raw image keys.
std::vector<int> bruteforce_partition(const SampledMap& map, int depth) {
  auto ball = [&](int v, int r) {
    std::set<int> seen = {v};
    std::vector<int> frontier = {v};
    for (int step = 0; step < r; ++step) {
      std::vector<int> next;
      for (int u : frontier)
        for (int w : map.adj[u])
          if (!seen.count(w)) {
            seen.insert(w);
            next.push_back(w);
          }
      frontier = next;
    }
    return seen;
  };
  auto key = [&](int v) {
    std::vector<std::set<std::string>> levels;
    for (int k = 1; k <= depth; ++k) {
      std::set<std::string> imgs;
      for (int u : ball(v, k)) imgs.insert(pt_str(map.values[u]));
      levels.push_back(imgs);
    }
    return levels;
  };
  std::vector<int> cls(map.n_vertices, -1);
  int next_id = 0;
  for (int v = 0; v < map.n_vertices; ++v) {
    if (cls[v] >= 0) continue;
    cls[v] = next_id;
    auto kv = key(v);
    for (int u = v + 1; u < map.n_vertices; ++u) {
      if (cls[u] >= 0) continue;
      if (pt_str(map.values[u]) == pt_str(map.values[v]) && key(u) == kv)
        cls[u] = next_id;
    }
    ++next_id;
  }
  return cls;
}

bool same_partition(const std::vector<int>& a, const Factorization& fac) {
  if (a.size() != fac.class_of.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (fac.class_of[i] == fac.class_of[j])) return false;
  return true;
}

Point val1(const Rat& x) { return pt_euclid({x}); }

}  // namespace

TEST_CASE("openness surrogate: embedding passes, fold composite flags +-1") {
  auto line1 = make_euclidean(1);
  auto plane = make_euclidean(2);
  Rat h(1, 100);
  auto cubic = [](const Rat& x) -> Rat { return x * x * x - 3 * x; };

  auto embedding = grid_map_1d(plane, rat(-2), rat(2), h, [&](const Rat& x) {
    return pt_euclid({x, cubic(x)});
  });
  auto emb_res = is_locally_open_onto_image(embedding, 3);
  CHECK(emb_res.open);
  CHECK(emb_res.failing.empty());

  auto composite = grid_map_1d(line1, rat(-2), rat(2), h, [&](const Rat& x) {
    return val1(cubic(x));
  });
  auto res = is_locally_open_onto_image(composite, 3);
  CHECK(!res.open);
  // Flags exactly at the grid vertices nearest the critical points x = -1
  // and x = 1 (index: x = -2 + i/100).
  std::set<int> expect = {100, 300};
  std::set<int> got(res.failing.begin(), res.failing.end());
  CHECK(got == expect);
  // Nothing outside the [0.9, 1.1] bands.
  for (int v : res.failing) {
    Rat x = rat(-2) + Rat(v) * h;
    CHECK(rat_abs(x) <= rat(11, 10));
    CHECK(rat_abs(x) >= rat(9, 10));
  }

  auto constant = grid_map_1d(line1, rat(0), rat(1), rat(1, 10),
                              [&](const Rat&) { return val1(rat(7)); });
  CHECK(is_locally_open_onto_image(constant, 3).open);
}

TEST_CASE("filtered quotient: projection grid collapses to the base interval") {
  auto line1 = make_euclidean(1);
  Rat h(1, 4);
  auto proj = grid_region_map_2d(
      {rat(0), rat(0)}, {rat(1), rat(1)}, h,
      [](const VecR&) { return true; }, line1,
      [](const VecR& p) { return pt_euclid({p[0]}); });
  CHECK(proj.n_vertices == 25);
  auto fac = filtered_quotient(proj, 3);
  CHECK(fac.classes.size() == 5);  // fiber columns
  for (const auto& cls : fac.classes) CHECK(cls.size() == 5);
  // X^f is order-isomorphic to the base interval grid: a path graph.
  int endpoints = 0;
  for (const auto& nbrs : fac.quotient_adj) {
    CHECK(nbrs.size() <= 2);
    if (nbrs.size() == 1) ++endpoints;
  }
  CHECK(endpoints == 2);
  CHECK(fac.f_sharp_locally_injective);
  // f_sharp globally injective here.
  std::set<std::string> vals;
  for (const auto& p : fac.f_sharp) vals.insert(pt_str(p));
  CHECK(vals.size() == fac.classes.size());
  // Independent brute-force partition agrees.
  CHECK(same_partition(bruteforce_partition(proj, 3), fac));
  // Factorization commutes: f = f_sharp o q.
  for (int v = 0; v < proj.n_vertices; ++v)
    CHECK(pt_eq(proj.values[v], fac.f_sharp[fac.class_of[v]]));
  // Monotone-light partition matches and refines through q^f.
  auto ml = monotone_light(proj);
  CHECK(same_partition(bruteforce_partition(proj, 3), ml));
  CHECK(partition_refines(ml, fac));
}

TEST_CASE("filtered quotient: identity and angle doubling") {
  auto line1 = make_euclidean(1);
  auto ident = grid_map_1d(line1, rat(0), rat(1), rat(1, 8),
                           [](const Rat& x) { return val1(x); });
  auto fac = filtered_quotient(ident, 3);
  CHECK(fac.classes.size() == (size_t)ident.n_vertices);
  CHECK(same_partition(bruteforce_partition(ident, 3), fac));

  // Angle doubling on a discretized circle: 16-cycle onto an 8-cycle. A
  // local homeomorphism has trivial filtered part: q^f merges the antipodal
  // fiber pairs (their image neighborhood families agree at every depth) and
  // f_sharp is injective. The 2-to-1 locally injective light map is the
  // monotone-light factorization's light part.
  auto target = cycle_space(8);
  std::vector<int> image;
  for (int k = 0; k < 16; ++k) image.push_back(k % 8);
  auto doubling = cycle_map(target, image);
  CHECK(is_locally_open_onto_image(doubling, 2).open);
  auto dfac = filtered_quotient(doubling, 2);
  CHECK(dfac.classes.size() == 8);  // fibers merged: f_sharp injective
  for (const auto& cls : dfac.classes) {
    REQUIRE(cls.size() == 2);
    CHECK(cls[1] == cls[0] + 8);  // antipodal pair
  }
  CHECK(same_partition(bruteforce_partition(doubling, 2), dfac));
  CHECK(dfac.f_sharp_locally_injective);
  std::set<std::string> dvals;
  for (const auto& p : dfac.f_sharp) dvals.insert(pt_str(p));
  CHECK(dvals.size() == dfac.classes.size());
  // Monotone part: fibers are discrete, so classes are singletons and the
  // light part is 2-to-1 and locally injective.
  auto dml = monotone_light(doubling);
  CHECK(dml.classes.size() == 16);
  std::map<std::string, int> counts;
  for (const auto& p : dml.f_sharp) counts[pt_str(p)]++;
  for (const auto& [_, c] : counts) CHECK(c == 2);
  for (size_t c = 0; c < dml.classes.size(); ++c)
    for (int nb : dml.quotient_adj[c])
      CHECK(!pt_eq(dml.f_sharp[c], dml.f_sharp[nb]));  // locally injective
  CHECK(partition_refines(dml, dfac));
}

TEST_CASE("monotone classes split a disconnected fiber that q^f merges") {
  auto line1 = make_euclidean(1);
  // f(x) = |x - 1| on [0,2]: the fiber of 1 is {0, 2}, disconnected.
  auto vmap = grid_map_1d(line1, rat(0), rat(2), rat(1, 4), [](const Rat& x) {
    return val1(rat_abs(x - 1));
  });
  auto res = is_locally_open_onto_image(vmap, 2);
  CHECK(res.open);
  auto fac = filtered_quotient(vmap, 2);
  auto ml = monotone_light(vmap);
  // Monotone part splits the outer fiber; the filtered quotient merges the
  // mirror-symmetric pairs (equal image families).
  CHECK(ml.classes.size() == (size_t)vmap.n_vertices);
  CHECK(fac.classes.size() < ml.classes.size());
  CHECK(partition_refines(ml, fac));
  // Uniqueness surrogate: recomputing, and relabeling vertices, gives the
  // same partition.
  auto fac2 = filtered_quotient(vmap, 2);
  CHECK(same_partition(fac.class_of, fac2));
}

TEST_CASE("verify_etale: convex rectangle inclusion gets one global lift") {
  auto plane = make_euclidean(2);
  auto incl = grid_region_map_2d({rat(0), rat(0)}, {rat(1), rat(1)}, rat(1, 4),
                                 [](const VecR&) { return true; }, plane);
  AtlasConfig cfg;
  cfg.granularity = rat(4);
  cfg.cover_box = std::make_pair(VecR{rat(-1), rat(-1)}, VecR{rat(2), rat(2)});
  auto atlas = default_atlas(plane, cfg);
  auto cert = verify_etale(incl, atlas);
  CHECK(cert.lifts.size() == 1);
  CHECK(cert.max_fiber == 1);
  CHECK(cert.prop9_ok);
  CHECK(cert.closed_ok);
  auto geo = lift_atlas(incl, cert);
  std::vector<int> samples;
  for (int v = 0; v < incl.n_vertices; v += 3) samples.push_back(v);
  auto report = check_axioms_lifted(geo, samples);
  for (const auto& e : report.entries) {
    INFO(e.check, " ", e.witness);
    CHECK(e.pass);
  }
}

TEST_CASE("verify_etale: doubled circle (fibers of size 2, disjoint lifts)") {
  auto target = cycle_space(8);
  std::vector<int> image;
  for (int k = 0; k < 16; ++k) image.push_back(k % 8);
  auto doubling = cycle_map(target, image);
  AtlasConfig cfg;
  cfg.granularity = rat(3);
  auto atlas = default_atlas(target, cfg);
  auto cert = verify_etale(doubling, atlas);
  CHECK(cert.max_fiber == 2);
  for (const auto& [img, size] : cert.fiber_sizes) CHECK(size == 2);
  CHECK(cert.prop9_ok);
  // Twice the charts of the base arc cover (one ball chart per target
  // vertex at this granularity).
  CHECK(atlas.charts.size() == 8);
  CHECK(cert.lifts.size() == 16);
  auto geo = lift_atlas(doubling, cert);
  std::vector<int> samples;
  for (int v = 0; v < 16; ++v) samples.push_back(v);
  auto report = check_axioms_lifted(geo, samples);
  for (const auto& e : report.entries) {
    INFO(e.check, " ", e.witness);
    CHECK(e.pass);
  }
}

TEST_CASE("verify_etale: figure-eight immersion (fiber 2 at the node)") {
  // Two loops of length 8 sharing vertex 0; the domain circle traverses
  // loop A then loop B.
  std::vector<GraphEdge> edges;
  for (int i = 0; i < 8; ++i) edges.push_back({i, (i + 1) % 8, rat(1)});
  for (int i = 0; i < 8; ++i) {
    int u = i == 0 ? 0 : 7 + i;
    int v = i == 7 ? 0 : 8 + i;
    edges.push_back({u, v, rat(1)});
  }
  auto target = make_polyhedral(15, edges);
  std::vector<int> image;
  for (int k = 0; k < 8; ++k) image.push_back(k);
  image.push_back(0);
  for (int k = 1; k < 8; ++k) image.push_back(7 + k);
  // Domain: 16-cycle, image visits the node twice.
  auto eight = cycle_map(target, image);
  AtlasConfig cfg;
  cfg.granularity = rat(3);
  auto atlas = default_atlas(target, cfg);
  auto cert = verify_etale(eight, atlas);
  CHECK(cert.max_fiber == 2);
  int node_fibers = 0;
  for (const auto& [img, size] : cert.fiber_sizes) {
    if (size == 2) ++node_fibers;
  }
  CHECK(node_fibers == 1);
  CHECK(cert.prop9_ok);
  auto geo = lift_atlas(eight, cert);
  std::vector<int> samples;
  for (int v = 0; v < eight.n_vertices; ++v) samples.push_back(v);
  auto report = check_axioms_lifted(geo, samples);
  for (const auto& e : report.entries) {
    INFO(e.check, " ", e.witness);
    CHECK(e.pass);
  }
}

TEST_CASE("neighborhood families are descending chains containing the center") {
  auto line1 = make_euclidean(1);
  auto ident = grid_map_1d(line1, rat(0), rat(1), rat(1, 8),
                           [](const Rat& x) { return val1(x); });
  auto fam = neighborhood_family(ident, 4, 3);
  REQUIRE(fam.balls.size() == 3);
  for (size_t k = 0; k + 1 < fam.balls.size(); ++k) {
    // Descending: each level contains the next.
    for (int v : fam.balls[k + 1])
      CHECK(std::binary_search(fam.balls[k].begin(), fam.balls[k].end(), v));
  }
  for (const auto& ball : fam.balls)
    CHECK(std::binary_search(ball.begin(), ball.end(), 4));
}
