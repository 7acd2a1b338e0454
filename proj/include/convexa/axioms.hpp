#pragma once

#include <string>
#include <vector>

#include "convexa/atlas.hpp"
#include "convexa/hull.hpp"

namespace convexa {

struct AxiomEntry {
  std::string check;
  bool pass = true;
  long checked = 0;
  std::string witness;  // filled on first failure
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  long pairs_checked = 0;
  long pairs_skipped = 0;  // NonUniqueGeodesic pairs (segment undefined there)
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

// Validates (C1)-(C3), symmetry (3), degeneracy (4), splitting (6), the
// double characterization (5), implication (7), the connectivity lemma and
// the chart-cover surrogate on the given samples. Failures become report
// entries, never exceptions.
AxiomReport check_axioms(const SpaceModel& space, const Atlas& atlas,
                         const std::vector<Point>& samples);

struct Star {
  Point center;
  std::vector<Point> ends;
  std::vector<Segment> arms;
};

// Builds the star over `ends`; throws ArmsOverlap when two arms meet outside
// the center. End-set cardinality is ends.size().
Star build_star(const SpaceModel& space, const Point& center,
                const std::vector<Point>& ends);

}  // namespace convexa
