#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "convexa/region.hpp"

namespace convexa {

// Chart sizing knobs. granularity is the chart diameter; chart centers sit on
// a lattice of step granularity / overlap_factor.
struct AtlasConfig {
  Rat granularity = Rat(1);
  Rat overlap_factor = Rat(2);
  // Region the atlas must cover, for unbounded Euclidean spaces. Bounded
  // spaces derive it from their own data.
  std::optional<std::pair<VecR, VecR>> cover_box;
};

struct Chart {
  int id = -1;
  Point center;
  Rat radius;     // half the granularity
  Region region;  // convex open region
};

struct Atlas {
  std::vector<Chart> charts;
  Rat lattice_step;  // deterministic lattice for breakpoint choices
};

// Finite atlas of convex charts covering the space (ball interiors on a
// canonical lattice). Every chart is convexity-checked; covering is verified
// on a canonical dense sample. Throws CannotCover.
Atlas default_atlas(const SpaceModel& space, const AtlasConfig& cfg);

// Charts containing p (ids, ascending).
std::vector<int> atlas_charts_containing(const SpaceModel& space,
                                         const Atlas& atlas, const Point& p);

bool charts_intersect(const SpaceModel& space, const Chart& a, const Chart& b);

// Chart n chart as a region (nonempty iff charts_intersect).
Region chart_overlap(const SpaceModel& space, const Chart& a, const Chart& b);

// Deterministic representative of a nonempty overlap: the lexicographically
// least lattice point strictly inside, falling back to the overlap midpoint.
Point overlap_point(const SpaceModel& space, const Atlas& atlas, const Chart& a,
                    const Chart& b);

// chart.region n r (implemented for the structured piece combinations the
// library produces).
Region atlas_intersect_region(const SpaceModel& space, const Chart& chart,
                              const Region& r);

// Candidate-chart lookup. Euclidean lattice atlases answer by index
// arithmetic; other models fall back to the full id range.
class ChartIndex {
 public:
  ChartIndex(const SpaceModel& space, const Atlas& atlas);
  std::vector<int> candidates(const Point& p) const;

 private:
  const SpaceModel& space_;
  const Atlas& atlas_;
  bool lattice_ = false;
  std::map<std::string, int> by_center_;
};

}  // namespace convexa
