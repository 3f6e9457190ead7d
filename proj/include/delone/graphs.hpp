#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "delone/neighbors.hpp"

namespace delone {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Combinatorial graph G_c: vertices are the point ids, edges the relation
/// pairs, counting measure.
struct CombinatorialGraph {
  PointSetPtr ps;
  std::vector<std::vector<int>> adj;
  double S = 0.0;

  static CombinatorialGraph from_relation(const NeighborRelation& rel);
  std::size_t size() const { return adj.size(); }
};

/// Hop metric d_c by breadth-first search; -1 marks unreachable vertices.
std::vector<int> dc_distances(const CombinatorialGraph& g, int x);
int dc(const CombinatorialGraph& g, int x, int y);  // -1 if unreachable

struct MetricEdge {
  int a, b;
  double len;
};

/// Point on a metric edge: offset t in [0, len] from endpoint a. Vertices are
/// addressed through any incident edge with offset 0 or len.
struct EdgePoint {
  int edge = -1;
  double offset = 0.0;
};

/// Metric graph G_m: intervals of length ||x-y|| glued at the vertices,
/// measure = edge length measure.
struct MetricGraph {
  PointSetPtr ps;
  std::vector<MetricEdge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge id)
  double S = 0.0;
  double total_length = 0.0;

  static MetricGraph from_relation(const NeighborRelation& rel);
  std::size_t n_vertices() const { return adj.size(); }

  EdgePoint vertex_point(int v) const;
  /// Ambient coordinates of an edge point.
  Vec position(const EdgePoint& a) const;
  /// Vertex id when the edge point sits on a vertex (tol on offset), else -1.
  int as_vertex(const EdgePoint& a, double tol = 1e-12) const;
};

/// d_m distances from a to every vertex (Dijkstra; inf if unreachable).
std::vector<double> dm_vertex_distances(const MetricGraph& g, const EdgePoint& a);
double dm(const MetricGraph& g, const EdgePoint& a, const EdgePoint& b);

enum class BallMode { combinatorial, metric };

struct BallValue {
  double value = 0.0;
  bool truncated = false;  // the ball may touch the window boundary
};

/// mu_c of the ball around x: number of vertices within distance s of x in
/// the chosen metric.
BallValue ball_count_c(const CombinatorialGraph& g, int x, double s,
                       BallMode mode = BallMode::combinatorial);

/// mu_m of the metric ball: total length of the part of the graph within
/// d_m-distance s of a, with exact partial edge segments.
BallValue ball_measure_m(const MetricGraph& g, const EdgePoint& a, double s);

/// Vertex ids inside the d_c ball (helper for ball-restricted operators).
std::vector<int> dc_ball_vertices(const CombinatorialGraph& g, int x, double s);

struct EquivalenceReport {
  double max_dm_over_d = 0.0;
  double max_Sdc_over_dm = 0.0;
  double max_dc_over_d = 0.0;
  double C = 0.0;  // analytic constant from the packing argument
  int samples = 0;
  std::uint64_t seed = 0;
  bool bounds_hold = true;  // d <= d_m <= S*d_c and d_c <= C*d on every sample
};

/// C = (sigma_N + |B_{S+r}|/(2r)) / |U_r| with sigma_N the volume of the
/// (S+r)-ball in R^{N-1}.
double equivalence_constant(int dim, double r, double S);

EquivalenceReport equivalence_constants(const NeighborRelation& rel, const DeloneParams& params,
                                        double margin, int samples, std::uint64_t seed);

}  // namespace delone
