#pragma once

#include "convexa/sampled_map.hpp"

namespace convexa {

// Descending chain of combinatorial neighborhoods at one vertex with the
// sampled image family (the finite stand-in for the image neighborhood
// filter).
struct NeighborhoodFamily {
  int vertex = -1;
  std::vector<std::vector<int>> balls;   // radius depth .. 1 (descending)
  std::vector<std::vector<int>> images;  // sorted image ids per level
};

NeighborhoodFamily neighborhood_family(const SampledMap& map, int v, int depth);

struct OpennessWitness {
  int vertex = -1;       // failing vertex
  int inner_vertex = -1; // the x' inside every candidate neighborhood
  int level = -1;        // failing level j
  int image_id = -1;     // the strictly-closer outside image point
};

struct OpennessResult {
  bool open = true;
  OpennessWitness witness;
  std::vector<int> failing;  // all failing vertices (ascending)
};

// Discrete openness-onto-image surrogate: x passes when some neighborhood
// level U = N_k(x) has, for every x' in U and every level j, the sampled
// image of N_j(x') n U containing every image sample strictly closer to
// f(x') than T's own nearest other point.
OpennessResult is_locally_open_onto_image(const SampledMap& map, int depth);

struct Factorization {
  std::vector<std::vector<int>> classes;     // partition, each sorted
  std::vector<int> class_of;                 // vertex -> class
  std::vector<std::vector<int>> quotient_adj;
  std::vector<Point> f_sharp;                // class -> target point
  // Reported surrogates.
  bool openness_onto_quotient = true;  // q maps neighborhoods onto neighborhoods
  bool f_sharp_locally_injective = true;
  int depth = 0;
};

// Quotient by depth-d image-family agreement (vertices identified iff their
// values and sampled image families agree at every level). Requires the map
// to pass is_locally_open_onto_image; throws NotLocallyOpen otherwise.
Factorization filtered_quotient(const SampledMap& map, int depth);

// Classical monotone part: connected components of fibers.
Factorization monotone_light(const SampledMap& map);

// Every class of `finer` lies inside one class of `coarser`.
bool partition_refines(const Factorization& finer, const Factorization& coarser);

}  // namespace convexa
