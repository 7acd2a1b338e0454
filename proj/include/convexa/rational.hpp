#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace convexa {

// Exact rational scalar. Every geometric predicate in the library is computed
// over Rat; doubles appear only in rendered output as advisory approximations.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p" or "p/q". Returns nullopt on malformed input.
std::optional<Rat> rat_parse(const std::string& text);

std::string rat_str(const Rat& r);

inline double rat_dbl(const Rat& r) { return r.get_d(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Largest integer m with m*step <= x  (step > 0).
long rat_floor_div(const Rat& x, const Rat& step);

// Smallest integer m with m*step >= x (step > 0).
long rat_ceil_div(const Rat& x, const Rat& step);

}  // namespace convexa
