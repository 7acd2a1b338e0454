#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexa/errors.hpp"
#include "convexa/lgp.hpp"
#include "oracles.hpp"

using namespace convexa;

namespace {

SpaceModel plane() { return make_euclidean(2); }

Atlas plane_atlas(const SpaceModel& space, const Rat& granularity,
                  const VecR& lo, const VecR& hi) {
  AtlasConfig cfg;
  cfg.granularity = granularity;
  cfg.cover_box = std::make_pair(lo, hi);
  return default_atlas(space, cfg);
}

bool lshape_member(const VecR& p) {
  bool lower = p[0] >= 0 && p[0] <= 2 && p[1] >= 0 && p[1] <= 1;
  bool upper = p[0] >= 0 && p[0] <= 1 && p[1] >= 1 && p[1] <= 2;
  return lower || upper;
}

}  // namespace

TEST_CASE("is_locally_convex_map: rectangle inclusion passes, L-shape fails") {
  auto space = plane();
  auto atlas = plane_atlas(space, rat(3), {rat(-1), rat(-1)}, {rat(3), rat(3)});

  auto rect = grid_region_map_2d({rat(0), rat(0)}, {rat(2), rat(1)}, rat(1, 4),
                                 [](const VecR&) { return true; }, space);
  auto ok = is_locally_convex_map(rect, atlas);
  CHECK(ok.ok);

  auto lshape = grid_region_map_2d({rat(0), rat(0)}, {rat(2), rat(2)}, rat(1, 4),
                                   lshape_member, space);
  auto bad = is_locally_convex_map(lshape, atlas);
  CHECK(!bad.ok);
  // Witness is the reflex corner vertex (1,1): the star of cells there is an
  // L. The brute-force oracle around that corner agrees.
  CHECK(pt_eq(lshape.values[bad.witness_vertex], pt_euclid({rat(1), rat(1)})));
  bool oracle = oracles::grid_nonconvex_witness_2d(
      {rat(1, 2), rat(1, 2)}, {rat(3, 2), rat(3, 2)}, 8, [&](const VecR& p) {
        return lshape_member(p);
      });
  CHECK(oracle);
}

TEST_CASE("verify_weak_convexity: projection of a convex grid region") {
  auto space = make_euclidean(1);
  AtlasConfig acfg;
  acfg.granularity = rat(1, 2);
  acfg.cover_box = std::make_pair(VecR{rat(-1)}, VecR{rat(2)});
  auto atlas = default_atlas(space, acfg);
  auto proj = grid_region_map_2d(
      {rat(0), rat(0)}, {rat(1), rat(1)}, rat(1, 8),
      [](const VecR&) { return true; }, space,
      [](const VecR& p) { return pt_euclid({p[0]}); });
  WeakConvexityConfig cfg;
  cfg.pair_budget = 16;
  auto report = verify_weak_convexity(proj, atlas, cfg);
  CHECK(report.failures.empty());
  CHECK(report.pairs_checked > 0);
  CHECK(report.quotient_classes == 9);
  // Every reported geodesic lies inside the image segment [0,1].
  for (const auto& g : report.geodesics) {
    CHECK(g.minimal);
    for (const auto& p : g.image_breakpoints) {
      CHECK(p.coords[0] >= rat(0));
      CHECK(p.coords[0] <= rat(1));
    }
  }
}

TEST_CASE("verify_weak_convexity rejects the circle image in the plane") {
  // Angle-doubling-like map whose image is a discrete circle in R^2: vertex
  // neighborhoods map onto bent arcs, never convex in the linear structure.
  auto space = plane();
  auto atlas = plane_atlas(space, rat(2), {rat(-2), rat(-2)}, {rat(2), rat(2)});
  // 8 points on a square "circle" (octagon vertices.)
  std::vector<VecR> ring = {{rat(1), rat(0)},  {rat(1), rat(1)},
                            {rat(0), rat(1)},  {rat(-1), rat(1)},
                            {rat(-1), rat(0)}, {rat(-1), rat(-1)},
                            {rat(0), rat(-1)}, {rat(1), rat(-1)}};
  std::vector<std::pair<int, int>> edges;
  std::vector<Cell> cells;
  std::vector<Point> values;
  for (int i = 0; i < 8; ++i) {
    edges.push_back({i, (i + 1) % 8});
    cells.push_back({{i, (i + 1) % 8}, std::nullopt});
    values.push_back(pt_euclid(ring[i]));
  }
  auto circle = make_sampled_map(8, edges, std::move(cells), space,
                                 std::move(values));
  CHECK_THROWS_AS(verify_weak_convexity(circle, atlas), HypothesisFailed);
}

TEST_CASE("klee_check classifies the three shipped shapes") {
  auto space = plane();
  // Convex polygon.
  Region poly = region_poly({{rat(0), rat(0)},
                             {rat(2), rat(0)},
                             {rat(3), rat(1)},
                             {rat(1), rat(2)}});
  CHECK(klee_check(space, poly).verdict == KleeVerdict::convex);

  // L-shape: not locally convex, witness at the reflex corner.
  Region lshape = region_union(
      space, region_box({rat(0), rat(0)}, {rat(2), rat(1)}),
      region_box({rat(0), rat(1)}, {rat(1), rat(2)}));
  auto lres = klee_check(space, lshape);
  CHECK(lres.verdict == KleeVerdict::not_locally_convex);
  REQUIRE(lres.has_witness);
  CHECK(pt_eq(lres.witness, pt_euclid({rat(1), rat(1)})));

  // Two disjoint squares.
  Region two = region_union(
      space, region_box({rat(0), rat(0)}, {rat(1), rat(1)}),
      region_box({rat(2), rat(0)}, {rat(3), rat(1)}));
  CHECK(klee_check(space, two).verdict == KleeVerdict::not_connected);

  // Open region: not closed.
  Region open_box = region_box({rat(0), rat(0)}, {rat(1), rat(1)}, true);
  CHECK(klee_check(space, open_box).verdict == KleeVerdict::not_closed);
}

TEST_CASE("klee_check never calls a witnessed region convex (random battery)") {
  auto space = plane();
  oracles::Lcg rng(515);
  int checked = 0;
  for (int round = 0; round < 30; ++round) {
    // Random union of two axis boxes anchored to overlap.
    Rat x0 = rng.rat(0, 2, 2), y0 = rng.rat(0, 2, 2);
    Rat w0 = rng.rat(1, 3, 2), h0 = rng.rat(1, 3, 2);
    Rat x1 = x0 + rng.rat(0, 1, 2), y1 = y0 + rng.rat(0, 1, 2);
    Rat w1 = rng.rat(1, 3, 2), h1 = rng.rat(1, 3, 2);
    Region r = region_union(space, region_box({x0, y0}, {x0 + w0, y0 + h0}),
                            region_box({x1, y1}, {x1 + w1, y1 + h1}));
    auto res = klee_check(space, r);
    // Brute-force witness search over a rational grid.
    VecR wa, wb;
    bool witness = oracles::grid_nonconvex_witness_2d(
        {x0 - 1, y0 - 1},
        {x0 + w0 + w1 + 2, y0 + h0 + h1 + 2}, 10,
        [&](const VecR& p) { return region_contains(space, r, pt_euclid(p)); },
        &wa, &wb);
    if (witness) {
      INFO("round ", round);
      CHECK(res.verdict != KleeVerdict::convex);
    }
    ++checked;
  }
  CHECK(checked == 30);
}

TEST_CASE("momentum demo n=1 and n=2 at modest resolution") {
  WeakConvexityConfig cfg;
  cfg.pair_budget = 12;
  auto r1 = momentum_demo(1, 16, cfg);
  CHECK(r1.pass);
  CHECK(r1.weak.failures.empty());
  CHECK(r1.samples_in_hull);
  REQUIRE(r1.fixed_point_images.size() == 2);
  CHECK(pt_eq(r1.fixed_point_images[0], pt_euclid({rat(0)})));
  CHECK(pt_eq(r1.fixed_point_images[1], pt_euclid({rat(1)})));

  auto r2 = momentum_demo(2, 16, cfg);
  CHECK(r2.pass);
  CHECK(r2.weak.failures.empty());
  REQUIRE(r2.fixed_point_images.size() == 3);
  // Triangle (0,0), (1,0), (0,1).
  CHECK(pt_eq(r2.fixed_point_images[1], pt_euclid({rat(1), rat(0)})));
  CHECK(pt_eq(r2.fixed_point_images[2], pt_euclid({rat(0), rat(1)})));
  // Geodesics are straight segments in the simplex: minimality was checked,
  // and the endpoints' chord stays in the image (convexity oracle).
  for (const auto& g : r2.weak.geodesics) {
    REQUIRE(!g.image_breakpoints.empty());
    const auto& a = g.image_breakpoints.front().coords;
    const auto& b = g.image_breakpoints.back().coords;
    for (int step = 0; step <= 4; ++step) {
      VecR m = vec_lerp(a, b, rat(step, 4));
      Rat sum = m[0] + m[1];
      CHECK(sum <= rat(1));
      CHECK(m[0] >= rat(0));
      CHECK(m[1] >= rat(0));
    }
  }
}
