#pragma once

#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "delone/graphs.hpp"

namespace delone {

enum class Boundary { neumann, dirichlet };
enum class KernelMethod { dense_eig, krylov, automatic };

/// Optional weights: L u(x) = (1/h(x)) sum_{y~x} b(x,y) (u(x) - u(y)) with
/// b(x,y) = d(x,y)^l. Empty h means the counting measure.
struct WeightSpec {
  std::vector<double> h_by_id;  // indexed by point id; empty = unit
  double b_exponent = 0.0;
};

/// Graph Laplacian truncated to a window. In neumann mode only edges internal
/// to the window enter; in dirichlet mode the diagonal keeps the full-graph
/// degree, counting edges that leave the window.
struct DiscreteOperator {
  PointSetPtr ps;
  std::vector<int> vertex_ids;              // point ids inside the window
  std::vector<int> local_of_id;             // id -> local index or -1
  Eigen::SparseMatrix<double> A;            // symmetric form matrix (D - W)
  Eigen::VectorXd h;                        // vertex measure
  Boundary boundary = Boundary::neumann;
  Window op_window;
  double max_degree = 0.0;                  // max weighted degree, Gershgorin scale

  Eigen::Index size() const { return A.rows(); }
  int local(int id) const;
};

DiscreteOperator assemble(const NeighborRelation& rel, const Window& window, Boundary boundary,
                          const WeightSpec& weights = {});

struct KernelSamples {
  int source_id = -1;
  std::vector<int> target_ids;
  std::vector<double> times;
  Eigen::MatrixXd values;  // times x targets, p_t(source, target)
  Boundary boundary = Boundary::neumann;
  std::string method;
  double certificate = -1.0;  // filled by truncation_certificate when used
};

/// p_t(x, y) = (e^{-tL} delta_y)(x) / h(y). dense_eig does the full
/// eigendecomposition in the h-weighted inner product (n <= 5000); krylov
/// runs Lanczos from the source with an a-posteriori residual below tol.
KernelSamples heat_kernel(const DiscreteOperator& op, int source_id,
                          const std::vector<int>& target_ids, const std::vector<double>& times,
                          KernelMethod method = KernelMethod::automatic, double tol = 1e-10);

/// e^{-tL} u for a vector on the window (ordering = op.vertex_ids).
Eigen::VectorXd apply_semigroup(const DiscreteOperator& op, double t, const Eigen::VectorXd& u,
                                KernelMethod method = KernelMethod::automatic, double tol = 1e-10);

/// Max over targets and times of |p^D - p^N| / p^N for the dirichlet and
/// neumann truncations of the same window; small values certify that the
/// reported kernel does not feel the window boundary.
double truncation_certificate(const NeighborRelation& rel, const Window& window, int source_id,
                              const std::vector<int>& target_ids, const std::vector<double>& times,
                              const WeightSpec& weights = {},
                              KernelMethod method = KernelMethod::automatic, double tol = 1e-10);

}  // namespace delone
