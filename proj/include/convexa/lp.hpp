#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "convexa/vec.hpp"

namespace convexa {

// Exact linear programming over rationals (dense simplex, Bland's rule).
// Only the two queries the geometry layer needs are exposed; V-representation
// polytopes never get facet-enumerated anywhere in the library.

// p in conv(pts)?
bool lp_in_hull(const std::vector<VecR>& pts, const VecR& p);

// Parameter range {t : p + t*d in conv(pts)}; nullopt if the line misses the
// hull. Requires d != 0.
std::optional<std::pair<Rat, Rat>> lp_line_clip(const std::vector<VecR>& pts,
                                                const VecR& p, const VecR& d);

}  // namespace convexa
