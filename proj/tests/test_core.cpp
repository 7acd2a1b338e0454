#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexa/axioms.hpp"
#include "convexa/errors.hpp"
#include "convexa/hull.hpp"
#include "oracles.hpp"

using namespace convexa;

namespace {

SpaceModel chain_tree() {
  // 0-1-2 path with a fork at 1: vertex 3 hangs off.
  return make_tree(4, {{0, 1, rat(2)}, {1, 2, rat(3)}, {1, 3, rat(1)}});
}

SpaceModel triangle_cycle() {
  return make_polyhedral(3, {{0, 1, rat(1)}, {1, 2, rat(1)}, {0, 2, rat(1)}});
}

}  // namespace

TEST_CASE("interval segments follow the order interval") {
  auto space = make_interval(rat(0), rat(10));
  auto seg = segment(space, pt_interval(rat(3)), pt_interval(rat(7)));
  CHECK(seg_contains(space, seg, pt_interval(rat(5))));
  CHECK(!seg_contains(space, seg, pt_interval(rat(2))));
  CHECK(seg_length(space, seg) == rat(4));
  CHECK(segment_order(space, seg, pt_interval(rat(4)), pt_interval(rat(6))) ==
        Ordering::less);
  CHECK(segment_order(space, seg, pt_interval(rat(4)), pt_interval(rat(4))) ==
        Ordering::equal);
  // Reversing endpoints reverses strict comparisons.
  auto rev = segment(space, pt_interval(rat(7)), pt_interval(rat(3)));
  CHECK(segment_order(space, rev, pt_interval(rat(4)), pt_interval(rat(6))) ==
        Ordering::greater);
  CHECK(seg_set_eq(space, seg, rev));
}

TEST_CASE("degenerate segment is a singleton") {
  auto tree = chain_tree();
  auto p = pt_edge(tree, 0, rat(1, 2));
  auto seg = segment(tree, p, p);
  CHECK(seg_length(tree, seg) == rat(0));
  CHECK(seg_contains(tree, seg, p));
  CHECK(!seg_contains(tree, seg, pt_vertex(0, tree.kind)));
}

TEST_CASE("tree segment matches the BFS oracle") {
  auto tree = chain_tree();
  // Oracle: vertex path between leaves 2 and 3 on the raw edge list.
  auto path = oracles::bfs_vertex_path(4, {{0, 1}, {1, 2}, {1, 3}}, 2, 3);
  REQUIRE(path == std::vector<int>({2, 1, 3}));
  auto seg = segment(tree, pt_vertex(2, tree.kind), pt_vertex(3, tree.kind));
  // The fragment set must be exactly edges (1,2) and (1,3), fully.
  auto norm = frags_normalize(seg.frags);
  REQUIRE(norm.size() == 2);
  CHECK(norm[0].edge == 1);
  CHECK(norm[0].t0 == rat(0));
  CHECK(norm[0].t1 == rat(1));
  CHECK(norm[1].edge == 2);
  CHECK(seg_length(tree, seg) == rat(4));
  CHECK(seg_contains(tree, seg, pt_vertex(1, tree.kind)));
  CHECK(!seg_contains(tree, seg, pt_vertex(0, tree.kind)));
}

TEST_CASE("split returns the two sides meeting at the cut") {
  auto space = make_interval(rat(0), rat(10));
  auto seg = segment(space, pt_interval(rat(3)), pt_interval(rat(7)));
  auto [left, right] = split(space, seg, pt_interval(rat(5)));
  CHECK(left.a.x == rat(3));
  CHECK(left.b.x == rat(5));
  CHECK(right.a.x == rat(5));
  CHECK(right.b.x == rat(7));
  // Split at an endpoint gives a singleton plus the whole segment.
  auto [l2, r2] = split(space, seg, pt_interval(rat(3)));
  CHECK(seg_length(space, l2) == rat(0));
  CHECK(seg_set_eq(space, r2, seg));
  CHECK_THROWS_AS(split(space, seg, pt_interval(rat(9))), PointNotOnSegment);

  auto tree = chain_tree();
  auto tseg = segment(tree, pt_vertex(2, tree.kind), pt_vertex(3, tree.kind));
  auto halves = split(tree, tseg, pt_vertex(1, tree.kind));
  CHECK(seg_length(tree, halves.first) == rat(3));
  CHECK(seg_length(tree, halves.second) == rat(1));
}

TEST_CASE("euclidean segment order and membership are exact") {
  auto plane = make_euclidean(2);
  auto a = pt_euclid({rat(0), rat(0)});
  auto b = pt_euclid({rat(4), rat(2)});
  auto seg = segment(plane, a, b);
  CHECK(seg_contains(plane, seg, pt_euclid({rat(2), rat(1)})));
  CHECK(!seg_contains(plane, seg, pt_euclid({rat(2), rat(2)})));
  CHECK(segment_order(plane, seg, pt_euclid({rat(1), rat(1, 2)}),
                      pt_euclid({rat(3), rat(3, 2)})) == Ordering::less);
}

TEST_CASE("polyhedral ties raise NonUniqueGeodesic") {
  auto tri = triangle_cycle();
  // Midpoint of edge 0 against the opposite vertex: both ways measure 3/2.
  CHECK_THROWS_AS(
      segment(tri, pt_edge(tri, 0, rat(1, 2)), pt_vertex(2, tri.kind)),
      NonUniqueGeodesic);
  // Non-antipodal pairs are fine and take the short way.
  auto seg = segment(tri, pt_edge(tri, 0, rat(1, 4)), pt_vertex(1, tri.kind));
  CHECK(seg_length(tri, seg) == rat(3, 4));
}

TEST_CASE("is_convex: polytopes yes, L-shape no (with grid oracle)") {
  auto plane = make_euclidean(2);
  Region tri = region_poly({{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}});
  CHECK(is_convex(plane, tri));

  // L-shape: two unit-height rectangles.
  Region lshape = region_union(
      plane, region_box({rat(0), rat(0)}, {rat(2), rat(1)}),
      region_box({rat(0), rat(1)}, {rat(1), rat(2)}));
  WitnessPair w;
  CHECK(!is_convex(plane, lshape, nullptr, &w));
  // And the brute-force oracle agrees there is a witness pair.
  bool oracle = oracles::grid_nonconvex_witness_2d(
      {rat(0), rat(0)}, {rat(2), rat(2)}, 8,
      [&](const VecR& p) { return region_contains(plane, lshape, pt_euclid(p)); });
  CHECK(oracle);

  // Any segment, as a region, is convex (axiom C1).
  auto seg = segment(plane, pt_euclid({rat(0), rat(0)}), pt_euclid({rat(4), rat(2)}));
  CHECK(is_convex(plane, region_of_segment(plane, seg)));
}

TEST_CASE("convex hull per model") {
  auto plane = make_euclidean(2);
  auto hull = convex_hull(plane, {pt_euclid({rat(0), rat(0)}),
                                  pt_euclid({rat(1), rat(0)}),
                                  pt_euclid({rat(0), rat(1)}),
                                  pt_euclid({rat(1, 4), rat(1, 4)})});
  REQUIRE(hull.polys.size() == 1);
  CHECK(hull.polys[0].verts.size() == 3);  // interior point pruned
  CHECK(is_convex(plane, hull));
  CHECK(region_contains(plane, hull, pt_euclid({rat(1, 4), rat(1, 4)})));

  // Hull of one point is the singleton.
  auto single = convex_hull(plane, {pt_euclid({rat(2), rat(3)})});
  CHECK(region_contains(plane, single, pt_euclid({rat(2), rat(3)})));
  CHECK(!region_contains(plane, single, pt_euclid({rat(2), rat(2)})));

  CHECK_THROWS_AS(convex_hull(plane, {}), SchemaError);

  // Steiner subtree of three leaves, against exhaustive enumeration.
  auto tree = chain_tree();
  auto steiner = oracles::steiner_edges_bruteforce(
      4, {{0, 1}, {1, 2}, {1, 3}}, {0, 2, 3});
  REQUIRE(steiner == std::set<int>({0, 1, 2}));
  auto treg = convex_hull(tree, {pt_vertex(0, tree.kind), pt_vertex(2, tree.kind),
                                 pt_vertex(3, tree.kind)});
  std::set<int> covered;
  for (const auto& f : treg.frags) {
    CHECK(f.t0 == rat(0));
    CHECK(f.t1 == rat(1));
    covered.insert(f.edge);
  }
  CHECK(covered == steiner);

  // Interval hull is the min/max span.
  auto line = make_interval(rat(0), rat(10));
  auto ireg = convex_hull(line, {pt_interval(rat(7)), pt_interval(rat(2)),
                                 pt_interval(rat(5))});
  REQUIRE(ireg.intervals.size() == 1);
  CHECK(ireg.intervals[0].lo == rat(2));
  CHECK(ireg.intervals[0].hi == rat(7));
}

TEST_CASE("hull is idempotent and monotone") {
  auto plane = make_euclidean(2);
  oracles::Lcg rng(7);
  for (int round = 0; round < 10; ++round) {
    std::vector<Point> pts, sub;
    for (int i = 0; i < 6; ++i) {
      VecR v = {rng.rat(-4, 4, 4), rng.rat(-4, 4, 4)};
      pts.push_back(pt_euclid(v));
      if (i < 4) sub.push_back(pts.back());
    }
    auto h = convex_hull(plane, pts);
    auto h2 = convex_hull(plane, region_corners(plane, h) /* hull of hull */);
    CHECK(region_set_eq(plane, h, h2));
    auto hs = convex_hull(plane, sub);
    CHECK(convex_region_includes(plane, h, hs));
  }
}

TEST_CASE("closure keeps convexity and is idempotent") {
  auto line = make_interval(rat(0), rat(10));
  Region open = region_interval(line.kind, rat(3), rat(7), true, true);
  Region closed = closure(line, open);
  CHECK(region_contains(line, closed, pt_interval(rat(3))));
  CHECK(!region_contains(line, open, pt_interval(rat(3))));
  CHECK(region_set_eq(line, closure(line, closed), closed));

  auto plane = make_euclidean(2);
  oracles::Lcg rng(11);
  for (int round = 0; round < 8; ++round) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i)
      pts.push_back(pt_euclid({rng.rat(-3, 3, 3), rng.rat(-3, 3, 3)}));
    Region hull = convex_hull(plane, pts);
    CHECK(is_convex(plane, closure(plane, hull)));
  }
}

TEST_CASE("check_axioms passes on interval and tree models") {
  auto line = make_interval(rat(0), rat(1));
  AtlasConfig cfg;
  cfg.granularity = rat(1, 4);
  auto atlas = default_atlas(line, cfg);
  std::vector<Point> samples;
  for (int i = 0; i <= 8; ++i) samples.push_back(pt_interval(rat(i, 8)));
  auto report = check_axioms(line, atlas, samples);
  for (const auto& e : report.entries) {
    INFO(e.check, " witness=", e.witness);
    CHECK(e.pass);
  }
  CHECK(report.pairs_checked > 0);

  auto tree = chain_tree();
  AtlasConfig tcfg;
  tcfg.granularity = rat(3, 2);
  auto tatlas = default_atlas(tree, tcfg);
  std::vector<Point> tsamples = {pt_vertex(0, tree.kind), pt_vertex(1, tree.kind),
                                 pt_vertex(2, tree.kind), pt_vertex(3, tree.kind),
                                 pt_edge(tree, 1, rat(1, 3))};
  auto treport = check_axioms(tree, tatlas, tsamples);
  for (const auto& e : treport.entries) {
    INFO(e.check, " witness=", e.witness);
    CHECK(e.pass);
  }
}

TEST_CASE("check_axioms flags an injected non-convex chart") {
  auto plane = make_euclidean(2, Polytope{{{rat(0), rat(0)},
                                           {rat(2), rat(0)},
                                           {rat(2), rat(2)},
                                           {rat(0), rat(2)}}});
  AtlasConfig cfg;
  cfg.granularity = rat(1);
  auto atlas = default_atlas(plane, cfg);
  // Replace the region of the chart the sample lands in by an L-shaped union
  // that still contains the sample.
  std::vector<Point> samples = {pt_euclid({rat(15, 8), rat(15, 8)})};
  auto ids = atlas_charts_containing(plane, atlas, samples[0]);
  REQUIRE(!ids.empty());
  Region bad = region_union(
      plane, region_box({rat(0), rat(0)}, {rat(2), rat(1)}),
      region_box({rat(0), rat(1)}, {rat(1), rat(15, 8)}, false));
  bad = region_union(plane, bad,
                     region_box({rat(3, 2), rat(3, 2)}, {rat(2), rat(2)}));
  atlas.charts[ids.front()].region = bad;
  bool found_cover_failure = false;
  auto report = check_axioms(plane, atlas, samples);
  for (const auto& e : report.entries)
    if (e.check == "C3_chart_neighborhood" && !e.pass) found_cover_failure = true;
  CHECK(found_cover_failure);
}

TEST_CASE("stars: degree-4 tree vertex and collinear overlap") {
  auto star4 = make_tree(5, {{0, 1, rat(1)}, {0, 2, rat(1)}, {0, 3, rat(1)},
                             {0, 4, rat(1)}});
  auto s = build_star(star4, pt_vertex(0, star4.kind),
                      {pt_vertex(1, star4.kind), pt_vertex(2, star4.kind),
                       pt_vertex(3, star4.kind), pt_vertex(4, star4.kind)});
  CHECK(s.ends.size() == 4);

  // The example3 preset has interior branching points of order 4.
  auto ex3 = example3_tree(2, 4);
  CHECK(ex3.graph.incident[1].size() == 4);
  auto neighbors = ex3.graph.incident[1];
  std::vector<Point> ends;
  for (int e : neighbors) {
    const auto& ed = ex3.graph.edges[e];
    ends.push_back(pt_vertex(ed.u == 1 ? ed.v : ed.u, ex3.kind));
  }
  CHECK(build_star(ex3, pt_vertex(1, ex3.kind), ends).ends.size() == 4);

  // Single end: star is one segment.
  CHECK(build_star(star4, pt_vertex(0, star4.kind), {pt_vertex(1, star4.kind)})
            .arms.size() == 1);

  // Two collinear ends on the same ray overlap (oracle: the euclidean
  // segment-intersection predicate says the arms share more than the center).
  auto plane = make_euclidean(2);
  CHECK_THROWS_AS(build_star(plane, pt_euclid({rat(0), rat(0)}),
                             {pt_euclid({rat(1), rat(1)}),
                              pt_euclid({rat(2), rat(2)})}),
                  ArmsOverlap);
  // Distinct directions are fine.
  CHECK(build_star(plane, pt_euclid({rat(0), rat(0)}),
                   {pt_euclid({rat(1), rat(1)}), pt_euclid({rat(-1), rat(1)}),
                    pt_euclid({rat(1), rat(-2)})})
            .ends.size() == 3);
}

TEST_CASE("model constructor errors") {
  CHECK_THROWS_AS(make_interval(rat(1), rat(1)), BadEndpoints);
  CHECK_THROWS_AS(make_tree(3, {{0, 1, rat(1)}, {1, 2, rat(1)}, {0, 2, rat(1)}}),
                  NotATree);
  CHECK_THROWS_AS(make_tree(3, {{0, 1, rat(1)}}), NotATree);
  CHECK_THROWS_AS(make_euclidean(0), DegenerateBounds);
  CHECK_THROWS_AS(
      make_euclidean(2, Polytope{{{rat(0), rat(0)}, {rat(1), rat(1)}}}),
      DegenerateBounds);
  CHECK_THROWS_AS(make_polyhedral(4, {{0, 1, rat(1)}, {2, 3, rat(1)}}),
                  NotConnected);
  // Path tree vs interval: matched samples give the same order structure.
  auto path = make_tree(3, {{0, 1, rat(1)}, {1, 2, rat(1)}});
  auto seg = segment(path, pt_vertex(0, path.kind), pt_vertex(2, path.kind));
  auto line = make_interval(rat(0), rat(2));
  auto iseg = segment(line, pt_interval(rat(0)), pt_interval(rat(2)));
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      auto zi = seg_interp(path, seg, rat(i, 4));
      auto zj = seg_interp(path, seg, rat(j, 4));
      auto wi = seg_interp(line, iseg, rat(i, 4));
      auto wj = seg_interp(line, iseg, rat(j, 4));
      CHECK(segment_order(path, seg, zi, zj) == segment_order(line, iseg, wi, wj));
    }
}

TEST_CASE("polyhedral refine and graph ball regions") {
  auto tri0 = make_polyhedral(3, {{0, 1, rat(1)}, {1, 2, rat(1)}, {0, 2, rat(1)}}, 0);
  auto tri1 = make_polyhedral(3, {{0, 1, rat(1)}, {1, 2, rat(1)}, {0, 2, rat(1)}}, 1);
  CHECK(tri0.graph.n_vertices == 3);
  CHECK(tri1.graph.n_vertices == 6);
  CHECK(tri1.graph.edges.size() == 6);
  // refine preserves the metric.
  CHECK(graph_distance(tri1, pt_vertex(0, tri1.kind), pt_vertex(1, tri1.kind)) ==
        rat(1));
  // Balls: radius 1/4 around vertex 0 covers the two incident edge stubs.
  auto ball = region_graph_ball(tri0, pt_vertex(0, tri0.kind), rat(1, 4), false);
  CHECK(region_contains(tri0, ball, pt_edge(tri0, 0, rat(1, 4))));
  CHECK(!region_contains(tri0, ball, pt_edge(tri0, 0, rat(1, 2))));
  CHECK(is_convex(tri0, ball));
}

TEST_CASE("default atlas covers and polyhedral CannotCover fires") {
  auto tri = triangle_cycle();
  AtlasConfig small;
  small.granularity = rat(1, 2);
  auto atlas = default_atlas(tri, small);
  CHECK(atlas.charts.size() > 3);
  AtlasConfig big;
  big.granularity = rat(3, 2);  // half the girth: ball charts stop being convex
  CHECK_THROWS_AS(default_atlas(tri, big), CannotCover);
}
