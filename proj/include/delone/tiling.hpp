#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "delone/pointset.hpp"

namespace delone {

using Pt2 = std::array<double, 2>;

/// Convex polygon, counterclockwise. edge i runs v[i] -> v[(i+1)%n] and
/// edge_source[i] is the id of the point whose bisector produced it (-1 for a
/// surviving piece of the initial bounding box).
struct ConvexPolygon {
  std::vector<Pt2> v;
  std::vector<int> edge_source;

  double area() const;
  bool contains(const Pt2& p, double tol = 1e-12) const;
  /// Largest rho with B(c, rho) inside the polygon (min distance to an edge).
  double inradius_about(const Pt2& c) const;
  double max_vertex_distance(const Pt2& c) const;
};

/// Clip by the half-plane {p : n.p <= c}. Vertices closer than merge_tol are
/// fused.
ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const Pt2& n, double c,
                             int source, double merge_tol);

/// Axis-aligned square of half-width hw about c.
ConvexPolygon make_box(const Pt2& c, double hw);

/// Minimal distance between two convex polygons (0 if they touch or overlap).
double polygon_distance(const ConvexPolygon& a, const ConvexPolygon& b);

struct TilingSystem {
  PointSetPtr ps;
  DeloneParams params;
  double margin = 0.0;
  std::map<int, ConvexPolygon> cells;  // interior point id -> Voronoi cell

  bool has_cell(int id) const { return cells.count(id) > 0; }
};

/// Voronoi cells of all points in the margin-shrunk window, each obtained by
/// clipping a bounding box with the bisector half-planes of the points within
/// 2R. Requires dim == 2 and margin >= 2R so cells are locally determined.
TilingSystem voronoi_cells_2d(PointSetPtr ps, const DeloneParams& params, double margin);

struct FacetPair {
  int a, b;           // a < b
  double shared_len;  // length of the common boundary segment
};

/// Pairs of cells sharing a boundary segment longer than eps_len (corner-only
/// contacts excluded). Symmetric by construction.
std::vector<FacetPair> facet_adjacency(const TilingSystem& ts, double eps_len);

/// Polygon area of an interior cell (shoelace).
double cell_volume(const TilingSystem& ts, int id);

}  // namespace delone
