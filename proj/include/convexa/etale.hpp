#pragma once

#include <map>

#include "convexa/axioms.hpp"
#include "convexa/factorization.hpp"
#include "convexa/geo.hpp"

namespace convexa {

// One chart lift: a domain region mapped injectively onto a convex region
// inside some target chart.
struct Lift {
  int id = -1;
  std::vector<int> verts;  // sorted domain vertices
  Region image;
  int target_chart = -1;
};

struct EtaleConfig {
  int lift_k_max = 1;     // combinatorial neighborhood radius scan, k_max..1
  bool try_global = true; // attempt one global lift first
  int global_cap = 256;   // vertex cap for the global attempt
  int margin_ring = 3;    // closedness margins measured within this ring
};

struct EtaleCertificate {
  std::vector<Lift> lifts;
  std::vector<int> lift_of;  // vertex -> lift id
  // Finite closedness record: per image point, the image distance (squared
  // for linear targets) to the nearest sample outside the fiber's lift cover
  // within the margin ring; all must be positive.
  std::vector<std::pair<int, Rat>> closedness_margins;
  bool closed_ok = true;
  bool prop9_ok = true;
  std::pair<int, int> prop9_witness{-1, -1};  // offending lift pair
  std::vector<std::pair<int, int>> fiber_sizes;  // image id -> |fiber|
  int max_fiber = 0;
};

// Checks the etale clauses on the finite model: (i) chart-lift cover with
// injective, convex, chart-contained images; (ii) closedness margins;
// (iii) disjointness of jointly non-injective lift pairs; (iv) fiber
// finiteness table. Throws NotEtale with the failing clause.
EtaleCertificate verify_etale(const SampledMap& map, const Atlas& atlas,
                              const EtaleConfig& cfg = {});

// The lifted local convexity structure: the domain seen through its chart
// lifts, exposed as path-engine geometry over the target model.
class LiftedGeo : public GeoSpace {
 public:
  LiftedGeo(const SampledMap& map, EtaleCertificate cert);
  const SpaceModel& model() const override { return *map_.target; }
  int chart_count() const override { return (int)cert_.lifts.size(); }
  bool chart_contains(int chart, const PathPoint& p) const override;
  std::vector<int> charts_containing(const PathPoint& p) const override;
  std::vector<int> nerve_neighbors(int chart) const override;
  PathPoint overlap_representative(int c1, int c2) const override;
  Segment chart_segment(int chart, const PathPoint& a,
                        const PathPoint& b) const override;
  Region overlap_region(int c1, int c2) const override;
  bool same_point(const PathPoint& a, const PathPoint& b) const override;
  std::optional<std::pair<Rat, Point>> leg_meet_last(
      const Segment& leg_a, int chart_a, const Segment& leg_b,
      int chart_b) const override;

  const SampledMap& map() const { return map_; }
  const EtaleCertificate& certificate() const { return cert_; }
  bool sheets_compatible(int c1, int c2) const;
  // Domain vertices of a lift whose images lie in the other lift too.
  std::vector<int> shared_vertices(int c1, int c2) const;

 private:
  const SampledMap& map_;
  EtaleCertificate cert_;
  std::vector<std::vector<int>> vert_lifts_;
};

// Builds the lifted structure from a certificate (Theorem-2 direction); the
// axiom suite on it is a separate, reportable check.
LiftedGeo lift_atlas(const SampledMap& map, const EtaleCertificate& cert);

// (C1)-(C3) plus the compact-hull surrogate, chartwise on the lifted
// structure, over the given domain sample vertices.
AxiomReport check_axioms_lifted(const LiftedGeo& geo,
                                const std::vector<int>& sample_verts);

// Cached convexity of image regions keyed by their translate (grid domains
// repeat the same local pattern everywhere).
class ConvexImageCache {
 public:
  bool convex(const SpaceModel& target, const Region& r, const Point& base);

 private:
  std::map<std::string, bool> memo_;
};

}  // namespace convexa
