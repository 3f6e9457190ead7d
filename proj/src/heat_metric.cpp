#include "delone/heat_metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace delone {

int GraphMesh::find_node(const MetricGraph& g, int edge, double offset, double tol) const {
  if (edge < 0 || edge >= static_cast<int>(g.edges.size())) return -1;
  const MetricEdge& e = g.edges[edge];
  if (offset <= tol) return e.a;
  if (offset >= e.len - tol) return e.b;
  for (int i = n_vertices; i < static_cast<int>(nodes.size()); ++i) {
    if (nodes[i].edge == edge && std::abs(nodes[i].offset - offset) <= tol) return i;
  }
  return -1;
}

GraphMesh build_mesh(const MetricGraph& g, double dmax) {
  if (!(dmax > 0)) throw input_error("build_mesh: dmax must be positive");
  GraphMesh mesh;
  mesh.dmax = dmax;
  mesh.n_vertices = static_cast<int>(g.n_vertices());
  mesh.nodes.resize(mesh.n_vertices);
  for (int v = 0; v < mesh.n_vertices; ++v) mesh.nodes[v] = EdgePoint{-1, 0.0};

  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    const MetricEdge& ed = g.edges[e];
    const int m = std::max(1, static_cast<int>(std::ceil(ed.len / dmax - 1e-12)));
    const double h = ed.len / m;
    int prev = ed.a;
    for (int i = 1; i < m; ++i) {
      const int node = static_cast<int>(mesh.nodes.size());
      mesh.nodes.push_back(EdgePoint{e, i * h});
      mesh.elements.push_back({prev, node});
      mesh.elem_len.push_back(h);
      mesh.elem_edge.push_back(e);
      prev = node;
    }
    mesh.elements.push_back({prev, ed.b});
    mesh.elem_len.push_back(h);
    mesh.elem_edge.push_back(e);
  }
  return mesh;
}

FemPair assemble_fem(const GraphMesh& mesh, const std::vector<double>& density) {
  if (!density.empty() && density.size() != mesh.elements.size()) {
    throw input_error("assemble_fem: density must have one value per element");
  }
  const int n = static_cast<int>(mesh.n_nodes());
  std::vector<Eigen::Triplet<double>> kt, mt;
  FemPair fem;
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const auto [a, b] = mesh.elements[e];
    const double l = mesh.elem_len[e];
    const double rho = density.empty() ? 1.0 : density[e];
    if (!(rho > 0)) throw input_error("assemble_fem: density must be positive");
    const double ks = 1.0 / l;
    kt.emplace_back(a, a, ks);
    kt.emplace_back(b, b, ks);
    kt.emplace_back(a, b, -ks);
    kt.emplace_back(b, a, -ks);
    const double mm = rho * l / 6.0;
    mt.emplace_back(a, a, 2.0 * mm);
    mt.emplace_back(b, b, 2.0 * mm);
    mt.emplace_back(a, b, mm);
    mt.emplace_back(b, a, mm);
    fem.total_length += l;
  }
  fem.K.resize(n, n);
  fem.M.resize(n, n);
  fem.K.setFromTriplets(kt.begin(), kt.end());
  fem.M.setFromTriplets(mt.begin(), mt.end());
  return fem;
}

namespace {

constexpr int kDenseLimit = 1500;

eig::SymEig dense_pairs(const FemPair& fem) {
  return eig::dense_gen_eig(Eigen::MatrixXd(fem.K), Eigen::MatrixXd(fem.M));
}

}  // namespace

eig::SymEig eigenpairs(const FemPair& fem, int k) {
  const int n = static_cast<int>(fem.size());
  if (k < 1 || k > n) throw input_error("eigenpairs: k out of range");
  if (n <= kDenseLimit) {
    auto es = dense_pairs(fem);
    es.values.conservativeResize(k);
    es.vectors.conservativeResize(Eigen::NoChange, k);
    return es;
  }
  // pick a cutoff from the Weyl count N(lambda) ~ L sqrt(lambda)/pi and grow
  // until k eigenvalues are below it
  double lambda_cut = std::pow((k + 1) * M_PI / fem.total_length, 2.0) + 1.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (eig::inertia_below(fem.K, fem.M, lambda_cut) >= k) {
      auto es = eig::eigenpairs_below(fem.K, fem.M, lambda_cut);
      if (es.values.size() >= k) {
        es.values.conservativeResize(k);
        es.vectors.conservativeResize(Eigen::NoChange, k);
        return es;
      }
    }
    lambda_cut *= 2.0;
  }
  throw numerical_error("eigenpairs: could not bracket the requested eigenvalue count");
}

MetricKernelSamples metric_heat_kernel(const FemPair& fem, int source_node,
                                       const std::vector<int>& target_nodes,
                                       const std::vector<double>& times, double tol) {
  if (times.empty()) throw input_error("metric_heat_kernel: no times");
  for (double t : times) {
    if (!(t > 0)) throw input_error("metric_heat_kernel: times must be positive");
  }
  const int n = static_cast<int>(fem.size());
  const double tmin = *std::min_element(times.begin(), times.end());
  // tail bound e^{-lambda t} * n below tol
  const double lambda_cut = std::log(static_cast<double>(n) / tol) / tmin;

  eig::SymEig es;
  if (n <= kDenseLimit) {
    es = dense_pairs(fem);  // complete spectrum, no truncation tail
  } else {
    try {
      // eigenpairs_below certifies (by inertia) that every mode below the cut
      // is present, so the first excluded eigenvalue is >= lambda_cut
      es = eig::eigenpairs_below(fem.K, fem.M, lambda_cut);
    } catch (const numerical_error& err) {
      std::ostringstream msg;
      msg << "metric_heat_kernel: spectral cutoff " << lambda_cut << " not reached ("
          << err.what() << ")";
      throw numerical_error(msg.str());
    }
    if (es.values.size() == 0) {
      throw numerical_error("metric_heat_kernel: no eigenpairs below the cutoff");
    }
  }

  MetricKernelSamples out;
  out.source_node = source_node;
  out.target_nodes = target_nodes;
  out.times = times;
  out.modes_used = static_cast<int>(es.values.size());
  out.tail_bound = out.modes_used == n ? 0.0 : std::exp(-lambda_cut * tmin) * n;

  out.values.resize(times.size(), target_nodes.size());
  const Eigen::VectorXd phi_src = es.vectors.row(source_node).transpose();
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const Eigen::VectorXd w =
        (-times[ti] * es.values.array()).exp().matrix().cwiseProduct(phi_src);
    for (std::size_t yi = 0; yi < target_nodes.size(); ++yi) {
      out.values(ti, yi) = es.vectors.row(target_nodes[yi]).dot(w);
    }
  }
  return out;
}

Eigen::MatrixXd metric_heat_column(const FemPair& fem, int source_node,
                                   const std::vector<double>& times, double tol) {
  // p_t(source, .) = e^{-t M^{-1}K} M^{-1} e_source
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> msolver(fem.M);
  if (msolver.info() != Eigen::Success) {
    throw numerical_error("metric_heat_column: mass factorization failed");
  }
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(fem.size());
  e0[source_node] = 1.0;
  const Eigen::VectorXd v = msolver.solve(e0);
  const auto res = eig::lanczos_expm_gen(fem.K, fem.M, v, times, tol, 2000);
  return res.cols;
}

std::pair<FemPair, std::vector<int>> restrict_dirichlet(const FemPair& fem,
                                                        const std::vector<int>& dirichlet_nodes) {
  const int n = static_cast<int>(fem.size());
  std::vector<bool> drop(n, false);
  for (int i : dirichlet_nodes) {
    if (i < 0 || i >= n) throw input_error("restrict_dirichlet: node out of range");
    drop[i] = true;
  }
  std::vector<int> map(n, -1);
  int m = 0;
  for (int i = 0; i < n; ++i) {
    if (!drop[i]) map[i] = m++;
  }
  auto reduce = [&](const Eigen::SparseMatrix<double>& A) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int col = 0; col < A.outerSize(); ++col) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
        if (map[it.row()] >= 0 && map[it.col()] >= 0) {
          trip.emplace_back(map[it.row()], map[it.col()], it.value());
        }
      }
    }
    Eigen::SparseMatrix<double> B(m, m);
    B.setFromTriplets(trip.begin(), trip.end());
    return B;
  };
  FemPair out;
  out.K = reduce(fem.K);
  out.M = reduce(fem.M);
  out.total_length = fem.total_length;
  return {std::move(out), std::move(map)};
}

double metric_truncation_certificate(const FemPair& fem, const std::vector<int>& boundary_nodes,
                                     int source_node, const std::vector<int>& target_nodes,
                                     const std::vector<double>& times, double tol) {
  const Eigen::MatrixXd pn = metric_heat_column(fem, source_node, times, tol);
  auto [femD, map] = restrict_dirichlet(fem, boundary_nodes);
  if (map[source_node] < 0) {
    throw input_error("metric_truncation_certificate: source lies on the Dirichlet set");
  }
  const Eigen::MatrixXd pd = metric_heat_column(femD, map[source_node], times, tol);
  double worst = 0.0;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    for (int y : target_nodes) {
      if (map[y] < 0) throw input_error("metric_truncation_certificate: target on Dirichlet set");
      const double n_val = pn(y, static_cast<Eigen::Index>(ti));
      const double d_val = pd(map[y], static_cast<Eigen::Index>(ti));
      worst = std::max(worst, std::abs(d_val - n_val) / n_val);
    }
  }
  return worst;
}

std::vector<int> boundary_vertex_nodes(const MetricGraph& g, const GraphMesh& mesh, double depth) {
  std::vector<int> out;
  for (int v = 0; v < mesh.n_vertices; ++v) {
    if (g.ps->window.boundary_distance(g.ps->points[v]) < depth) out.push_back(v);
  }
  return out;
}

}  // namespace delone
