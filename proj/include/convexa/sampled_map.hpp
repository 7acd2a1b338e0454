#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "convexa/atlas.hpp"
#include "convexa/region.hpp"

namespace convexa {

// One cell of a sampled domain complex: its vertex tuple, plus an optional
// precomputed image piece for grid-generated complexes (clipped boxes),
// which keeps the hot convexity checks out of the LP.
struct Cell {
  std::vector<int> verts;
  std::optional<BoxPiece> box_hint;
};

// Finite discretization of a continuous map into a SpaceModel: vertex complex
// with adjacency and cell structure, plus the vertex value table.
struct SampledMap {
  int n_vertices = 0;
  std::vector<std::vector<int>> adj;  // sorted, symmetric
  std::vector<Cell> cells;
  const SpaceModel* target = nullptr;
  std::vector<Point> values;

  // Derived data, filled by finalize().
  std::vector<int> img_id;               // vertex -> dedup image id
  std::vector<Point> img_points;         // image id -> point
  std::vector<std::vector<int>> vert_cells;
  bool injective = false;

  // Optional locator: image point -> candidate vertices near it (set by the
  // grid builders; generic maps fall back to linear scans).
  std::function<std::vector<int>(const Point&)> locator;

  void finalize();
  // Closed combinatorial ball, sorted.
  std::vector<int> ball(int v, int radius) const;
};

SampledMap make_sampled_map(int n_vertices,
                            const std::vector<std::pair<int, int>>& edges,
                            std::vector<Cell> cells, const SpaceModel& target,
                            std::vector<Point> values);

// Cellwise image of a vertex set: union of the image hulls of the cells all
// of whose vertices lie in the set, plus singleton images of set vertices in
// no such cell.
Region image_region(const SampledMap& map, const std::vector<int>& verts);

// Exact order on image distances (int-lattice fast path for Euclidean
// targets with a small common denominator, pairwise metric matrix for graph
// targets).
class ImageMetric {
 public:
  explicit ImageMetric(const SampledMap& map);
  // d(img a, img b) < d(img c, img e)?
  bool less(int a, int b, int c, int e) const;
  // d(img a, img b) > 0 is free (ids distinct); expose the value for reports.
  Rat dist_or_dist2(int a, int b) const;

 private:
  const SampledMap& map_;
  bool use_int_ = false;
  std::vector<std::array<int64_t, 4>> icoords_;
  std::vector<std::vector<Rat>> graph_d_;
  int64_t idist2(int a, int b) const;
  Rat rdist2(int a, int b) const;
};

// ---- grid-generated sampled domains --------------------------------------

// Lattice complex over {k in N_0^n : sum k <= r} with L-infinity adjacency
// and clipped-box cells; values are k/r in the target. Image coordinates
// drop nothing: the map is the identity embedding of the simplex grid.
SampledMap simplex_grid_map(int n, int r, const SpaceModel& target);

// Lattice complex over the 2D region (given by an exact membership
// predicate evaluated at lattice points of spacing h); cells are the grid
// squares whose four corners lie in the region. `embed` maps lattice points
// to target values (defaults to inclusion).
SampledMap grid_region_map_2d(
    const VecR& lo, const VecR& hi, const Rat& h,
    const std::function<bool(const VecR&)>& member, const SpaceModel& target,
    const std::function<Point(const VecR&)>& embed = nullptr);

}  // namespace convexa
