#pragma once

#include <string>
#include <vector>

#include "delone/analysis.hpp"
#include "delone/heat_discrete.hpp"
#include "delone/heat_metric.hpp"
#include "delone/neighbors.hpp"
#include "delone/tiling.hpp"

namespace delone::io {

/// Doubles are written with 17 significant digits so round-trips are exact.
std::string fmt(double x);

void save_points(const PointSet& ps, const std::string& csv_path, const std::string& meta_path,
                 const DeloneParams* params = nullptr);
PointSet load_points(const std::string& csv_path, const std::string& meta_path,
                     DeloneParams* params_out = nullptr);

/// Edge list `id_a,id_b,distance`.
void save_edges(const NeighborRelation& rel, const std::string& path);
/// Reads pairs; distances are recomputed from the point set on ingest.
std::vector<std::pair<int, int>> load_edges(const std::string& path);

/// Cells as JSON rows {id, vertices, area}; facet adjacency as
/// `id_a,id_b,shared_length`.
void save_cells(const TilingSystem& ts, const std::string& path);
void save_facets(const std::vector<FacetPair>& facets, const std::string& path);

/// Kernel samples `x_id,y_id,t,p,mode,certificate`.
void save_kernel(const KernelSamples& k, const std::string& path);

/// Operator export as a symmetric coordinate triple list `row,col,value` over
/// point ids.
void save_operator(const DiscreteOperator& op, const std::string& path);

/// Mesh nodes `node_id,edge_id,offset,x,y` (dim 2).
void save_mesh(const MetricGraph& g, const GraphMesh& mesh, const std::string& path);

/// Ball growth curve `s,mu`.
void save_curve(const std::vector<std::pair<double, double>>& curve, const std::string& path);

/// Envelope scatter `X,Y`.
void save_scatter(const std::vector<std::pair<double, double>>& xy, const std::string& path);

}  // namespace delone::io
