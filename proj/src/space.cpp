#include "convexa/space.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "convexa/errors.hpp"
#include "convexa/lp.hpp"

namespace convexa {

std::string model_kind_str(ModelKind k) {
  switch (k) {
    case ModelKind::interval: return "interval";
    case ModelKind::metric_tree: return "metric_tree";
    case ModelKind::euclidean: return "euclidean";
    case ModelKind::polyhedral: return "polyhedral";
  }
  return "?";
}

void GraphData::build_incidence() {
  incident.assign(n_vertices, {});
  for (int e = 0; e < (int)edges.size(); ++e) {
    incident[edges[e].u].push_back(e);
    incident[edges[e].v].push_back(e);
  }
}

Point pt_interval(const Rat& x) {
  Point p;
  p.model = ModelKind::interval;
  p.x = x;
  return p;
}

Point pt_euclid(VecR coords) {
  Point p;
  p.model = ModelKind::euclidean;
  p.coords = std::move(coords);
  return p;
}

Point pt_vertex(int v, ModelKind kind) {
  Point p;
  p.model = kind;
  p.vertex = v;
  return p;
}

Point pt_edge(const SpaceModel& space, int edge, const Rat& t) {
  if (edge < 0 || edge >= (int)space.graph.edges.size())
    throw InvalidPoint("edge id out of range");
  if (t < 0 || t > 1) throw InvalidPoint("edge parameter outside [0,1]");
  if (t == 0) return pt_vertex(space.graph.edges[edge].u, space.kind);
  if (t == 1) return pt_vertex(space.graph.edges[edge].v, space.kind);
  Point p;
  p.model = space.kind;
  p.edge = edge;
  p.t = t;
  return p;
}

bool pt_eq(const Point& a, const Point& b) {
  if (a.model != b.model) return false;
  switch (a.model) {
    case ModelKind::interval: return a.x == b.x;
    case ModelKind::euclidean: return vec_eq(a.coords, b.coords);
    default:
      if (a.vertex >= 0 || b.vertex >= 0) return a.vertex == b.vertex;
      return a.edge == b.edge && a.t == b.t;
  }
}

bool pt_less(const Point& a, const Point& b) {
  switch (a.model) {
    case ModelKind::interval: return a.x < b.x;
    case ModelKind::euclidean: return vec_lex_less(a.coords, b.coords);
    default: {
      // vertices first by id, then edge points by (edge, t)
      bool av = a.vertex >= 0, bv = b.vertex >= 0;
      if (av != bv) return av;
      if (av) return a.vertex < b.vertex;
      if (a.edge != b.edge) return a.edge < b.edge;
      return a.t < b.t;
    }
  }
}

std::string pt_str(const Point& p) {
  std::ostringstream os;
  switch (p.model) {
    case ModelKind::interval: os << rat_str(p.x); break;
    case ModelKind::euclidean: {
      os << "(";
      for (size_t i = 0; i < p.coords.size(); ++i)
        os << (i ? "," : "") << rat_str(p.coords[i]);
      os << ")";
      break;
    }
    default:
      if (p.vertex >= 0)
        os << "v" << p.vertex;
      else
        os << "e" << p.edge << "@" << rat_str(p.t);
  }
  return os.str();
}

void check_point(const SpaceModel& space, const Point& p) {
  if (p.model != space.kind) throw InvalidPoint("point model does not match space");
  switch (space.kind) {
    case ModelKind::interval:
      if (p.x < space.interval.a || p.x > space.interval.b)
        throw InvalidPoint("interval coordinate outside domain");
      break;
    case ModelKind::euclidean:
      if ((int)p.coords.size() != space.euclid.dim)
        throw InvalidPoint("coordinate dimension mismatch");
      if (space.euclid.bounds &&
          !lp_in_hull(space.euclid.bounds->verts, p.coords))
        throw InvalidPoint("point outside declared bounds");
      break;
    default:
      if (p.vertex >= 0) {
        if (p.vertex >= space.graph.n_vertices)
          throw InvalidPoint("vertex id out of range");
      } else {
        if (p.edge < 0 || p.edge >= (int)space.graph.edges.size())
          throw InvalidPoint("edge id out of range");
        if (p.t <= 0 || p.t >= 1)
          throw InvalidPoint("edge point parameter must lie in (0,1)");
      }
  }
}

std::optional<Rat> pt_on_edge(const SpaceModel& space, const Point& p, int edge) {
  const auto& e = space.graph.edges[edge];
  if (p.vertex >= 0) {
    if (p.vertex == e.u) return Rat(0);
    if (p.vertex == e.v) return Rat(1);
    return std::nullopt;
  }
  if (p.edge == edge) return p.t;
  return std::nullopt;
}

// ---- constructors --------------------------------------------------------

SpaceModel make_interval(const Rat& a, const Rat& b) {
  if (!(a < b)) throw BadEndpoints("interval requires a < b");
  SpaceModel s;
  s.kind = ModelKind::interval;
  s.interval = {a, b};
  return s;
}

namespace {

void check_graph_edges(int n, const std::vector<GraphEdge>& edges) {
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
      throw SchemaError("bad edge endpoints");
    if (e.w <= 0) throw SchemaError("edge weights must be positive");
  }
}

bool graph_connected(int n, const std::vector<GraphEdge>& edges) {
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++cnt;
        q.push(v);
      }
  }
  return cnt == n;
}

GraphData build_graph(int n, std::vector<GraphEdge> edges,
                      std::vector<VecR> positions) {
  GraphData g;
  g.n_vertices = n;
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  g.edges = std::move(edges);
  g.positions = std::move(positions);
  g.build_incidence();
  return g;
}

}  // namespace

SpaceModel make_tree(int n_vertices, const std::vector<GraphEdge>& edges,
                     std::vector<VecR> positions) {
  check_graph_edges(n_vertices, edges);
  if (!graph_connected(n_vertices, edges))
    throw NotATree("tree must be connected");
  if ((int)edges.size() != n_vertices - 1)
    throw NotATree("tree must be acyclic (|E| = |V| - 1)");
  SpaceModel s;
  s.kind = ModelKind::metric_tree;
  s.graph = build_graph(n_vertices, edges, std::move(positions));
  return s;
}

SpaceModel make_euclidean(int dim, std::optional<Polytope> bounds) {
  if (dim < 1) throw DegenerateBounds("dimension must be >= 1");
  if (bounds) {
    if (bounds->verts.empty()) throw DegenerateBounds("empty bounds polytope");
    for (const auto& v : bounds->verts)
      if ((int)v.size() != dim) throw DegenerateBounds("bounds dimension mismatch");
    // Full-dimensionality: the affine span of the vertices must be dim-D.
    // Rank of the difference matrix checked by LP-free Gaussian elimination.
    std::vector<VecR> diffs;
    for (size_t i = 1; i < bounds->verts.size(); ++i)
      diffs.push_back(vec_sub(bounds->verts[i], bounds->verts[0]));
    int rank = 0;
    for (int col = 0; col < dim && rank < (int)diffs.size(); ++col) {
      int piv = -1;
      for (int r = rank; r < (int)diffs.size(); ++r)
        if (diffs[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(diffs[rank], diffs[piv]);
      for (int r = 0; r < (int)diffs.size(); ++r) {
        if (r == rank || diffs[r][col] == 0) continue;
        Rat f = diffs[r][col] / diffs[rank][col];
        for (int c = 0; c < dim; ++c) diffs[r][c] -= f * diffs[rank][c];
      }
      ++rank;
    }
    if (rank < dim) throw DegenerateBounds("bounds polytope not full-dimensional");
  }
  SpaceModel s;
  s.kind = ModelKind::euclidean;
  s.euclid.dim = dim;
  s.euclid.bounds = std::move(bounds);
  return s;
}

SpaceModel make_polyhedral(int n_vertices, const std::vector<GraphEdge>& edges,
                           int refine, std::vector<VecR> positions) {
  check_graph_edges(n_vertices, edges);
  if (!graph_connected(n_vertices, edges))
    throw NotConnected("polyhedral complex must be connected");
  std::vector<GraphEdge> es = edges;
  std::vector<VecR> pos = std::move(positions);
  int n = n_vertices;
  for (int round = 0; round < refine; ++round) {
    std::vector<GraphEdge> next;
    next.reserve(es.size() * 2);
    for (const auto& e : es) {
      int mid = n++;
      Rat half = e.w / 2;
      next.push_back({e.u, mid, half});
      next.push_back({mid, e.v, half});
      if (!pos.empty()) pos.push_back(vec_lerp(pos[e.u], pos[e.v], rat(1, 2)));
    }
    es = std::move(next);
  }
  SpaceModel s;
  s.kind = ModelKind::polyhedral;
  s.graph = build_graph(n, std::move(es), std::move(pos));
  return s;
}

SpaceModel example3_tree(int depth, int width) {
  if (depth < 1 || width < 3)
    throw SchemaError("example3 needs depth >= 1 and width >= 3");
  // Singular line: vertices 0..width-1. Interior line vertices get two
  // branches (the up/down solution curves), so their degree is 4.
  std::vector<GraphEdge> edges;
  int n = width;
  for (int i = 0; i + 1 < width; ++i) edges.push_back({i, i + 1, rat(1)});
  std::vector<VecR> pos;
  for (int i = 0; i < width; ++i) pos.push_back({rat(i), rat(0)});
  for (int i = 1; i + 1 < width; ++i) {
    for (int sgn : {+1, -1}) {
      int prev = i;
      for (int d = 1; d <= depth; ++d) {
        int nv = n++;
        // Branch edge lengths shrink like the cubic solution curves steepen.
        edges.push_back({prev, nv, rat(1, d + 1)});
        pos.push_back({rat(i) + rat(d, 2 * depth), rat(sgn * d, depth)});
        prev = nv;
      }
    }
  }
  return make_tree(n, edges, std::move(pos));
}

}  // namespace convexa
