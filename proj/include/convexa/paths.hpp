#pragma once

#include "convexa/geo.hpp"

namespace convexa {

// Breakpoint sequence with per-leg chart assignments; the straightening
// engine's working object. legs[i] joins breakpoints[i] and breakpoints[i+1]
// inside chart leg_charts[i].
struct LinePath {
  std::vector<PathPoint> breakpoints;
  std::vector<Segment> legs;
  std::vector<int> leg_charts;
  bool simple_flag = false;
  bool converged = true;
  int rounds = 0;
  int modifications = 0;  // cut count of the last simplify

  int n_legs() const { return (int)legs.size(); }
};

struct ChartChain {
  std::vector<int> charts;
  PathPoint x, y;
};

enum class ArcVerdict { less, greater, equivalent, incomparable };

struct ArcComparison {
  ArcVerdict verdict = ArcVerdict::incomparable;
  Region hull_a, hull_b;
};

struct StraightenConfig {
  Rat tol = Rat(1, 1000000000);  // canonical already (1/10^9)
  int max_rounds = 64;
  int max_inscription_legs = 4096;
};

// Minimal chart chain from x to y on the atlas nerve (breadth-first search,
// deterministic tie-breaks). Throws NoChain.
ChartChain chart_chain(const GeoSpace& geo, const PathPoint& x,
                       const PathPoint& y);

// Line path through deterministically chosen overlap representatives.
LinePath line_path_from_chain(const GeoSpace& geo, const ChartChain& chain);

LinePath line_path_from_breakpoints(const GeoSpace& geo,
                                    const std::vector<PathPoint>& bps);

// Traces the polyline through the given waypoints, bisecting every chord
// into chart-sized legs. The point set equals the input trace.
LinePath line_path_from_polyline(const GeoSpace& geo,
                                 const std::vector<Point>& waypoints,
                                 int max_legs = 4096);

// Prop.-8 loop: cut the growing simple prefix back at the largest meet point
// and reattach. Output is injective and uses fewer than n modifications.
LinePath simplify(const GeoSpace& geo, const LinePath& path);

// Exact pairwise-leg injectivity check.
bool path_is_simple(const GeoSpace& geo, const LinePath& path);

// Closed convex hull of the path (breakpoints plus leg corner points).
Region path_hull(const GeoSpace& geo, const LinePath& path);

// Eq.-(15) preorder by mutual inclusion of closed hulls.
ArcComparison hull_compare(const GeoSpace& geo, const LinePath& a,
                           const LinePath& b);

// Merge/slide (plus exact chord inscription in linear coordinates) fixpoint
// iteration; endpoint-preserving, hull-monotone. Non-convergence inside
// max_rounds is flagged on the result, not thrown.
LinePath straighten(const GeoSpace& geo, const LinePath& path,
                    const StraightenConfig& cfg = {});

// Computable form of "convex simple geodesic": the path's point set is convex
// and equals the closed hull of its breakpoints.
bool is_minimal_arc(const GeoSpace& geo, const LinePath& path);

// Point set of the path as a region.
Region path_region(const GeoSpace& geo, const LinePath& path);

}  // namespace convexa
