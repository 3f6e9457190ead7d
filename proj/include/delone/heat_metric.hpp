#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "delone/eig.hpp"
#include "delone/graphs.hpp"

namespace delone {

/// Conforming P1 mesh of a metric graph. The first n_vertices nodes are the
/// graph vertices (shared across incident edges, which is the weak Kirchhoff
/// condition); each edge of length l contributes ceil(l/dmax) equal elements.
struct GraphMesh {
  int n_vertices = 0;
  std::vector<EdgePoint> nodes;            // vertex nodes carry edge = -1
  std::vector<std::array<int, 2>> elements;
  std::vector<double> elem_len;
  std::vector<int> elem_edge;
  double dmax = 0.0;

  std::size_t n_nodes() const { return nodes.size(); }
  int node_of_vertex(int v) const { return v; }
  /// Mesh node exactly at (edge, offset), or -1 when no node sits there.
  int find_node(const MetricGraph& g, int edge, double offset, double tol = 1e-9) const;
};

GraphMesh build_mesh(const MetricGraph& g, double dmax);

/// Stiffness and consistent mass of the energy form int u'v' on the mesh.
struct FemPair {
  Eigen::SparseMatrix<double> K;
  Eigen::SparseMatrix<double> M;
  double total_length = 0.0;

  Eigen::Index size() const { return K.rows(); }
};

/// Optional per-element density scales the mass matrix (a bounded h replacing
/// the length measure); empty means density one.
FemPair assemble_fem(const GraphMesh& mesh, const std::vector<double>& density = {});

/// First k generalized eigenpairs of K v = lambda M v, ascending and
/// M-orthonormal. Dense for small systems, otherwise certified shift-invert
/// Lanczos.
eig::SymEig eigenpairs(const FemPair& fem, int k);

struct MetricKernelSamples {
  int source_node = -1;
  std::vector<int> target_nodes;
  std::vector<double> times;
  Eigen::MatrixXd values;  // times x targets
  double tail_bound = 0.0; // e^{-lambda_K t_min} * node count, certified < tol
  int modes_used = 0;
};

/// Heat kernel by truncated spectral expansion sum_k e^{-lambda_k t}
/// phi_k(x) phi_k(y); the cutoff is chosen so e^{-lambda_K tmin} * (node
/// count) < tol. Raises numerical_error with the achieved bound when the
/// eigensolver cannot deliver the spectrum below the required cutoff.
MetricKernelSamples metric_heat_kernel(const FemPair& fem, int source_node,
                                       const std::vector<int>& target_nodes,
                                       const std::vector<double>& times, double tol = 1e-9);

/// Kernel column by Lanczos on M^{-1}K (all times, one basis): independent of
/// the spectral path, used for cross-validation and the truncation
/// certificate.
Eigen::MatrixXd metric_heat_column(const FemPair& fem, int source_node,
                                   const std::vector<double>& times, double tol = 1e-10);

/// Restrict a FEM pair to the complement of the given nodes (Dirichlet
/// condition there). Returns the reduced pair and the old->new index map
/// (-1 for removed nodes).
std::pair<FemPair, std::vector<int>> restrict_dirichlet(const FemPair& fem,
                                                        const std::vector<int>& dirichlet_nodes);

/// Dirichlet/Neumann discrepancy max |p^D - p^N| / p^N over targets and
/// times, with the Dirichlet condition on the given boundary nodes.
double metric_truncation_certificate(const FemPair& fem, const std::vector<int>& boundary_nodes,
                                     int source_node, const std::vector<int>& target_nodes,
                                     const std::vector<double>& times, double tol = 1e-10);

/// Mesh nodes belonging to vertices within distance `depth` of the window
/// boundary (candidate Dirichlet set for certificates).
std::vector<int> boundary_vertex_nodes(const MetricGraph& g, const GraphMesh& mesh, double depth);

}  // namespace delone
