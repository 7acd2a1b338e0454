#pragma once

#include "convexa/etale.hpp"
#include "convexa/paths.hpp"

namespace convexa {

struct LocalConvexityResult {
  bool ok = true;
  int witness_vertex = -1;
  std::string reason;
};

// Every vertex must have a neighborhood that is open onto its image and
// whose image region is convex inside some target chart; shrinkability is
// checked on two nested neighborhood levels.
LocalConvexityResult is_locally_convex_map(const SampledMap& map,
                                           const Atlas& atlas, int depth = 1);

struct GeodesicRecord {
  int class_a = -1, class_b = -1;
  std::vector<Point> image_breakpoints;  // pushed down to Y along f_sharp
  bool minimal = false;
  bool converged = false;
};

struct WeakConvexityConfig {
  int depth = 1;
  int pair_budget = 64;
  unsigned seed = 0;  // rotates the farthest-point start
  StraightenConfig straighten;
  EtaleConfig etale;
};

struct WeakConvexityReport {
  long pairs_checked = 0;
  std::vector<GeodesicRecord> geodesics;
  std::vector<std::pair<int, int>> failures;  // class pairs without a geodesic
  int quotient_classes = 0;
  int lift_charts = 0;
  // Config echo.
  int depth = 0;
  int pair_budget = 0;
  unsigned seed = 0;
  Rat tol;
};

// Runs the proof pipeline: filtered quotient, etale certificate for the
// induced map, lifted geodesic structure, then chart chains + simplify +
// straighten per sampled image pair. Hypothesis failures throw
// HypothesisFailed; per-pair budget misses land in `failures`.
WeakConvexityReport verify_weak_convexity(const SampledMap& map,
                                          const Atlas& atlas,
                                          const WeakConvexityConfig& cfg = {});

enum class KleeVerdict { convex, not_locally_convex, not_closed, not_connected };

struct KleeResult {
  KleeVerdict verdict = KleeVerdict::convex;
  Point witness;            // offending corner or separation witness
  WitnessPair witness_pair; // for the convexity cross-check
  bool has_witness = false;
};

std::string klee_verdict_str(KleeVerdict v);

// Tietze-Nakajima / Klee corollary checker for sampled polygonal regions in
// a Euclidean target.
KleeResult klee_check(const SpaceModel& space, const Region& region);

struct MomentumReport {
  int n = 0;
  int resolution = 0;
  Rat grid_h;
  WeakConvexityReport weak;
  std::vector<Point> fixed_point_images;
  bool samples_in_hull = false;
  Rat probe_max_dist2;     // deep-hole probe: max min squared distance
  Rat cell_diam2;          // exact cell diameter bound
  bool hausdorff_ok = false;
  bool pass = false;
};

// Sampled torus momentum map on the squared-modulus simplex; runs the weak
// convexity pipeline and compares the sampled image to the convex hull of
// the fixed-point images within grid tolerance.
MomentumReport momentum_demo(int n, int resolution,
                             const WeakConvexityConfig& cfg = {});

}  // namespace convexa
