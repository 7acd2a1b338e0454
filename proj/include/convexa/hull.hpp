#pragma once

#include <optional>

#include "convexa/region.hpp"

namespace convexa {

struct Atlas;  // atlas.hpp

struct WitnessPair {
  Point x, y;
};

// Convexity check on the finite representation: all corner pairs must have
// their segment inside the region (single closed polytopes short-circuit).
// With an atlas, checks r n U convex for every chart U (Def.-4 semantics).
// Openness is immaterial here: the check runs on the closure.
bool is_convex(const SpaceModel& space, const Region& r,
               const Atlas* atlas = nullptr, WitnessPair* witness = nullptr);

struct HullConfig {
  int cell_budget = 4096;  // polyhedral iterated-closure fragment budget
};

// Smallest convex region containing pts (model-specific exact construction).
Region convex_hull(const SpaceModel& space, const std::vector<Point>& pts,
                   const HullConfig& cfg = {});

// Topological closure within the model.
Region closure(const SpaceModel& space, const Region& r);

// B subset of A, where A is convex: corner containment suffices and is what
// this checks. Used by hull comparison.
bool convex_region_includes(const SpaceModel& space, const Region& a,
                            const Region& b);

}  // namespace convexa
