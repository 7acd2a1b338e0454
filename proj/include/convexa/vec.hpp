#pragma once

#include <vector>

#include "convexa/rational.hpp"

namespace convexa {

// Dense rational vector for Euclidean coordinates. Dimensions stay tiny
// (n <= 3 in all shipped models), so a plain vector is fine.
using VecR = std::vector<Rat>;

VecR vec_add(const VecR& a, const VecR& b);
VecR vec_sub(const VecR& a, const VecR& b);
VecR vec_scale(const Rat& s, const VecR& a);
// a + t*(b-a)
VecR vec_lerp(const VecR& a, const VecR& b, const Rat& t);
Rat vec_dot(const VecR& a, const VecR& b);
// Squared Euclidean norm; exact.
Rat vec_norm2(const VecR& a);
Rat vec_dist2(const VecR& a, const VecR& b);
bool vec_eq(const VecR& a, const VecR& b);
// Lexicographic order, used wherever a deterministic representative is needed.
bool vec_lex_less(const VecR& a, const VecR& b);
bool vec_is_zero(const VecR& a);
// True when b-a and c-a are parallel (rank <= 1), any dimension.
bool vec_collinear(const VecR& a, const VecR& b, const VecR& c);

}  // namespace convexa
