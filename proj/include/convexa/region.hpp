#pragma once

#include <optional>
#include <vector>

#include "convexa/segment.hpp"
#include "convexa/space.hpp"

namespace convexa {

struct IntervalPiece {
  Rat lo, hi;
  bool lo_open = false, hi_open = false;
};

// Undirected region fragment of a graph edge, t0 <= t1.
struct GraphFrag {
  int edge = -1;
  Rat t0, t1;
  bool open0 = false, open1 = false;
};

// Axis box [lo,hi], optionally cut by sum(x) <= diag_cut. Open boxes carry
// no cut (cut pieces only arise from closed cell complexes).
struct BoxPiece {
  VecR lo, hi;
  bool open = false;
  std::optional<Rat> diag_cut;
};

// Closed convex polytope, V-representation. hull2d is the CCW hull, set for
// dim 2 at construction and used for fast membership and rendering.
struct PolyPiece {
  std::vector<VecR> verts;
  std::vector<VecR> hull2d;
};

PolyPiece make_poly(std::vector<VecR> verts);

// Kind-specific finite representation of a subset of a SpaceModel.
struct Region {
  ModelKind model = ModelKind::interval;
  std::vector<IntervalPiece> intervals;
  std::vector<GraphFrag> frags;
  std::vector<int> graph_verts;  // isolated closed vertices
  std::vector<BoxPiece> boxes;
  std::vector<PolyPiece> polys;

  bool empty() const {
    return intervals.empty() && frags.empty() && graph_verts.empty() &&
           boxes.empty() && polys.empty();
  }
};

Region region_interval(ModelKind kind, const Rat& lo, const Rat& hi,
                       bool lo_open = false, bool hi_open = false);
Region region_box(const VecR& lo, const VecR& hi, bool open = false,
                  std::optional<Rat> diag_cut = std::nullopt);
Region region_poly(std::vector<VecR> verts);
Region region_point(const SpaceModel& space, const Point& p);
Region region_of_segment(const SpaceModel& space, const Segment& seg);
// Closed metric ball in a graph model (open = strict interior).
Region region_graph_ball(const SpaceModel& space, const Point& center,
                         const Rat& radius, bool open);

bool region_contains(const SpaceModel& space, const Region& r, const Point& p);

// segment(x,y) subset of r, exact. Graph segments are checked fragmentwise,
// Euclidean ones by clipping the chord against every piece and covering the
// parameter interval [0,1].
bool region_covers_segment(const SpaceModel& space, const Region& r,
                           const Segment& seg);

// The finite representation's corner points: interval endpoints, fragment
// endpoints and covered vertices, box/polytope vertices.
std::vector<Point> region_corners(const SpaceModel& space, const Region& r);

Region region_closure(const Region& r);
Region region_union(const SpaceModel& space, const Region& a, const Region& b);
// r intersected with an axis box window (euclidean) — used for chart
// shrinking and local windows. 2D polytopes are clipped exactly.
Region region_clip_box(const SpaceModel& space, const Region& r, const VecR& lo,
                       const VecR& hi);
// Intersection of two graph-fragment regions.
Region region_graph_intersect(const SpaceModel& space, const Region& a,
                              const Region& b);

bool region_set_eq(const SpaceModel& space, const Region& a, const Region& b);
bool region_graph_subset(const Region& inner, const Region& outer);

// Closed-interval cover primitive: does the union of the pieces cover
// [lo, hi] (a single closed interval)?
struct CoverPiece {
  Rat lo, hi;
  bool lo_open = false, hi_open = false;
};
bool cover_closed_interval(const Rat& lo, const Rat& hi,
                           std::vector<CoverPiece> pieces,
                           Rat* gap_at = nullptr);

// Clip {a + t(b-a)} against one Euclidean piece; parameter range within
// [0,1], nullopt if disjoint.
std::optional<CoverPiece> clip_chord_box(const BoxPiece& box, const VecR& a,
                                         const VecR& b);
std::optional<CoverPiece> clip_chord_poly(const PolyPiece& poly, const VecR& a,
                                          const VecR& b);

bool poly_contains(const PolyPiece& poly, const VecR& p);

// CCW convex hull of a 2D point set (monotone chain, exact).
std::vector<VecR> hull2d_ccw(std::vector<VecR> pts);

}  // namespace convexa
