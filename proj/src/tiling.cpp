#include "delone/tiling.hpp"

#include <algorithm>
#include <cmath>

#include "delone/grid_index.hpp"

namespace delone {

double ConvexPolygon::area() const {
  double s = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    s += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * s;
}

bool ConvexPolygon::contains(const Pt2& p, double tol) const {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    const double cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    if (cross < -tol) return false;
  }
  return true;
}

double ConvexPolygon::inradius_about(const Pt2& c) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % n];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    const double len = std::hypot(ex, ey);
    if (len == 0) continue;
    // signed distance of c to the edge line, positive inside (ccw)
    const double d = (ex * (c[1] - a[1]) - ey * (c[0] - a[0])) / len;
    best = std::min(best, d);
  }
  return best;
}

double ConvexPolygon::max_vertex_distance(const Pt2& c) const {
  double best = 0.0;
  for (const auto& p : v) best = std::max(best, std::hypot(p[0] - c[0], p[1] - c[1]));
  return best;
}

ConvexPolygon make_box(const Pt2& c, double hw) {
  ConvexPolygon poly;
  poly.v = {{c[0] - hw, c[1] - hw},
            {c[0] + hw, c[1] - hw},
            {c[0] + hw, c[1] + hw},
            {c[0] - hw, c[1] + hw}};
  poly.edge_source = {-1, -1, -1, -1};
  return poly;
}

ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const Pt2& n, double c,
                             int source, double merge_tol) {
  ConvexPolygon out;
  const std::size_t m = poly.v.size();
  if (m == 0) return out;
  auto value = [&](const Pt2& p) { return n[0] * p[0] + n[1] * p[1] - c; };

  for (std::size_t i = 0; i < m; ++i) {
    const Pt2& A = poly.v[i];
    const Pt2& B = poly.v[(i + 1) % m];
    const int label = poly.edge_source[i];
    const double sa = value(A);
    const double sb = value(B);
    const bool ina = sa <= 0.0;
    const bool inb = sb <= 0.0;
    if (ina) {
      out.v.push_back(A);
      out.edge_source.push_back(label);
      if (!inb) {
        const double t = sa / (sa - sb);
        out.v.push_back({A[0] + t * (B[0] - A[0]), A[1] + t * (B[1] - A[1])});
        out.edge_source.push_back(source);  // the new edge lies on the clip line
      }
    } else if (inb) {
      const double t = sa / (sa - sb);
      out.v.push_back({A[0] + t * (B[0] - A[0]), A[1] + t * (B[1] - A[1])});
      out.edge_source.push_back(label);
    }
  }

  // fuse duplicate consecutive vertices (degenerate zero-length edges)
  if (out.v.size() >= 2) {
    ConvexPolygon fused;
    const std::size_t k = out.v.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Pt2& p = out.v[i];
      const Pt2& q = out.v[(i + 1) % k];
      if (std::hypot(q[0] - p[0], q[1] - p[1]) > merge_tol) {
        fused.v.push_back(p);
        fused.edge_source.push_back(out.edge_source[i]);
      }
    }
    out = std::move(fused);
  }
  if (out.v.size() < 3) {
    out.v.clear();
    out.edge_source.clear();
  }
  return out;
}

double polygon_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  // small convex polygons: exact via vertex-segment distances, 0 on overlap
  for (const auto& p : a.v) {
    if (b.contains(p, 1e-12)) return 0.0;
  }
  for (const auto& p : b.v) {
    if (a.contains(p, 1e-12)) return 0.0;
  }
  auto seg_dist = [](const Pt2& p, const Pt2& u, const Pt2& w) {
    const double ex = w[0] - u[0], ey = w[1] - u[1];
    const double l2 = ex * ex + ey * ey;
    double t = l2 > 0 ? ((p[0] - u[0]) * ex + (p[1] - u[1]) * ey) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p[0] - (u[0] + t * ex), p[1] - (u[1] + t * ey));
  };
  double best = std::numeric_limits<double>::infinity();
  const std::size_t na = a.v.size(), nb = b.v.size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      best = std::min(best, seg_dist(a.v[i], b.v[j], b.v[(j + 1) % nb]));
      best = std::min(best, seg_dist(b.v[j], a.v[i], a.v[(i + 1) % na]));
    }
  }
  return best;
}

TilingSystem voronoi_cells_2d(PointSetPtr ps, const DeloneParams& params, double margin) {
  if (!ps) throw input_error("voronoi_cells_2d: null point set");
  if (ps->dim != 2) throw input_error("voronoi_cells_2d: exact Voronoi cells require dim 2");
  if (margin < 2.0 * params.R) {
    throw input_error("voronoi_cells_2d: margin must be >= 2R so cells are locally determined");
  }

  TilingSystem ts;
  ts.ps = ps;
  ts.params = params;
  ts.margin = margin;

  const double scale = std::max(1.0, 2.0 * params.R);
  const double merge_tol = 1e-12 * scale;
  GridIndex index(ps->points, std::max(params.R, 1e-9));

  for (int id : ps->interior_ids(margin)) {
    const Vec& x = ps->points[id];
    const Pt2 cx = {x[0], x[1]};
    ConvexPolygon cell = make_box(cx, 2.0 * params.R);
    for (int j : index.range_query(x, 2.0 * params.R)) {
      if (j == id) continue;
      const Vec& y = ps->points[j];
      // {p : ||p-x|| <= ||p-y||}  <=>  (y-x).p <= (y-x).(x+y)/2
      const Pt2 n = {y[0] - x[0], y[1] - x[1]};
      const double c = 0.5 * (n[0] * (x[0] + y[0]) + n[1] * (x[1] + y[1]));
      cell = clip_halfplane(cell, n, c, j, merge_tol);
      if (cell.v.empty()) break;
    }
    if (cell.v.empty()) {
      throw numerical_error("voronoi_cells_2d: degenerate empty cell");
    }
    ts.cells.emplace(id, std::move(cell));
  }
  return ts;
}

std::vector<FacetPair> facet_adjacency(const TilingSystem& ts, double eps_len) {
  // shared length as seen from each side; kept if either side exceeds eps_len
  std::map<std::pair<int, int>, double> best;
  for (const auto& [id, cell] : ts.cells) {
    const std::size_t n = cell.v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int j = cell.edge_source[i];
      if (j < 0 || !ts.has_cell(j)) continue;  // keep the relation on computed cells
      const Pt2& a = cell.v[i];
      const Pt2& b = cell.v[(i + 1) % n];
      const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
      const auto key = std::minmax(id, j);
      auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(key, len);
      } else {
        it->second = std::max(it->second, len);
      }
    }
  }
  std::vector<FacetPair> out;
  for (const auto& [key, len] : best) {
    if (len > eps_len) out.push_back({key.first, key.second, len});
  }
  return out;
}

double cell_volume(const TilingSystem& ts, int id) {
  auto it = ts.cells.find(id);
  if (it == ts.cells.end()) {
    throw input_error("cell_volume: id " + std::to_string(id) + " has no interior cell");
  }
  return it->second.area();
}

}  // namespace delone
