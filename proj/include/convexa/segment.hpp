#pragma once

#include <vector>

#include "convexa/space.hpp"

namespace convexa {

// Directed fragment of a graph edge: runs from parameter t0 to t1 along the
// stored edge (parameters measured from the edge's u endpoint).
struct EdgeFrag {
  int edge = -1;
  Rat t0, t1;
};

enum class Ordering { less, equal, greater };

// The minimal connected set C(x,y) with its linear order. `a` is the order
// minimum; swapping endpoints flips only the orientation, not the set.
struct Segment {
  ModelKind model = ModelKind::interval;
  Point a, b;
  std::vector<EdgeFrag> frags;  // graph models: the path from a to b
};

// Computes C(x,y). Polyhedral models throw NonUniqueGeodesic when two
// distinct shortest paths exist between x and y.
Segment segment(const SpaceModel& space, const Point& x, const Point& y);

bool seg_contains(const SpaceModel& space, const Segment& seg, const Point& p);

// Arc position of p from seg.a (graph: metric length; euclidean: chord
// parameter; interval: coordinate offset). Throws PointNotOnSegment.
Rat seg_position(const SpaceModel& space, const Segment& seg, const Point& p);

Ordering segment_order(const SpaceModel& space, const Segment& seg,
                       const Point& z, const Point& t);

// C(x,y) = C(x,z) u C(z,y); returns the two halves.
std::pair<Segment, Segment> split(const SpaceModel& space, const Segment& seg,
                                  const Point& z);

// Point at fraction lam in [0,1] of the way from seg.a to seg.b (by order
// parameter). Exact.
Point seg_interp(const SpaceModel& space, const Segment& seg, const Rat& lam);

// Set equality of two segments (independent of orientation).
bool seg_set_eq(const SpaceModel& space, const Segment& s1, const Segment& s2);

Rat seg_length(const SpaceModel& space, const Segment& seg);  // graph metric / interval; euclidean: chord param 1 or 0

Segment seg_reversed(const Segment& seg);

// Normalized (sorted, merged, undirected) fragment set of a graph segment.
std::vector<EdgeFrag> frags_normalize(const std::vector<EdgeFrag>& frags);

// Exact distances from one graph point to all vertices, with shortest-path
// multiplicity (saturated at 2) and unique-predecessor data.
struct GraphDists {
  std::vector<Rat> dist;
  std::vector<int> npaths;       // 1 or 2 (2 = "at least two")
  std::vector<int> parent_edge;  // valid where npaths == 1
  std::vector<int> parent_vert;
};
GraphDists graph_dijkstra(const SpaceModel& space, int source);

// Exact metric distance between two graph points.
Rat graph_distance(const SpaceModel& space, const Point& x, const Point& y);

}  // namespace convexa
