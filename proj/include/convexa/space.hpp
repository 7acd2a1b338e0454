#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convexa/vec.hpp"

namespace convexa {

enum class ModelKind { interval, metric_tree, euclidean, polyhedral };

std::string model_kind_str(ModelKind k);

struct GraphEdge {
  int u = -1, v = -1;  // stored with u < v
  Rat w;               // length > 0
};

// Metric graph backing both the tree and the polyhedral (length-space) models.
struct GraphData {
  int n_vertices = 0;
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> incident;  // vertex -> incident edge ids
  std::vector<VecR> positions;             // optional embedding (figures only)
  void build_incidence();
};

struct IntervalData {
  Rat a, b;
};

struct Polytope {
  std::vector<VecR> verts;
};

struct EuclideanData {
  int dim = 0;
  std::optional<Polytope> bounds;
};

struct SpaceModel {
  ModelKind kind = ModelKind::interval;
  IntervalData interval;  // kind == interval
  GraphData graph;        // kind == metric_tree | polyhedral
  EuclideanData euclid;   // kind == euclidean

  bool is_graph() const {
    return kind == ModelKind::metric_tree || kind == ModelKind::polyhedral;
  }
};

// A point of a SpaceModel. Graph points are canonical: edge form only with
// parameter strictly inside (0,1), endpoints collapse to the vertex form.
struct Point {
  ModelKind model = ModelKind::interval;
  Rat x;             // interval coordinate
  VecR coords;       // euclidean coordinates
  int vertex = -1;   // graph vertex form
  int edge = -1;     // graph edge form
  Rat t;             // parameter along edge, measured from endpoint u
};

Point pt_interval(const Rat& x);
Point pt_euclid(VecR coords);
Point pt_vertex(int v, ModelKind kind);
// Canonicalizes t in {0,1} to the vertex form.
Point pt_edge(const SpaceModel& space, int edge, const Rat& t);

bool pt_eq(const Point& a, const Point& b);
// Deterministic total order on points of one model (lex on the canonical form).
bool pt_less(const Point& a, const Point& b);
std::string pt_str(const Point& p);

// Validates that p lies in the space (edge exists, parameter in range,
// coordinate within declared bounds). Throws InvalidPoint.
void check_point(const SpaceModel& space, const Point& p);

// Position of a graph point along a given edge, if it lies on that edge
// (vertex endpoints included). nullopt otherwise.
std::optional<Rat> pt_on_edge(const SpaceModel& space, const Point& p, int edge);

// ---- model constructors (the `models` layer) ----------------------------

SpaceModel make_interval(const Rat& a, const Rat& b);
SpaceModel make_tree(int n_vertices, const std::vector<GraphEdge>& edges,
                     std::vector<VecR> positions = {});
SpaceModel make_euclidean(int dim, std::optional<Polytope> bounds = std::nullopt);
SpaceModel make_polyhedral(int n_vertices, const std::vector<GraphEdge>& edges,
                           int refine = 0, std::vector<VecR> positions = {});

// Finite approximation of the ODE tree continuum: a singular path of `width`
// vertices with a pair of solution-curve branches of `depth` vertices hanging
// off each interior path vertex, making those vertices branching points of
// order 4.
SpaceModel example3_tree(int depth, int width);

}  // namespace convexa
