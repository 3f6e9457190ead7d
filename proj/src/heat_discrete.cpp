#include "delone/heat_discrete.hpp"

#include <algorithm>
#include <cmath>

#include "delone/eig.hpp"

namespace delone {

namespace {

constexpr int kDenseLimit = 5000;

}  // namespace

int DiscreteOperator::local(int id) const {
  if (id < 0 || id >= static_cast<int>(local_of_id.size()) || local_of_id[id] < 0) {
    throw input_error("DiscreteOperator: id " + std::to_string(id) + " is not in the window");
  }
  return local_of_id[id];
}

DiscreteOperator assemble(const NeighborRelation& rel, const Window& window, Boundary boundary,
                          const WeightSpec& weights) {
  const PointSet& ps = *rel.ps;
  DiscreteOperator op;
  op.ps = rel.ps;
  op.boundary = boundary;
  op.op_window = window;

  op.local_of_id.assign(ps.size(), -1);
  for (int id = 0; id < static_cast<int>(ps.size()); ++id) {
    if (window.contains(ps.points[id])) {
      op.local_of_id[id] = static_cast<int>(op.vertex_ids.size());
      op.vertex_ids.push_back(id);
    }
  }
  const int n = static_cast<int>(op.vertex_ids.size());
  if (n == 0) throw input_error("assemble: window contains no vertices");

  op.h = Eigen::VectorXd::Ones(n);
  if (!weights.h_by_id.empty()) {
    if (weights.h_by_id.size() != ps.size()) {
      throw input_error("assemble: h weight vector must cover every point id");
    }
    for (int i = 0; i < n; ++i) {
      const double hv = weights.h_by_id[op.vertex_ids[i]];
      if (!(hv > 0)) throw input_error("assemble: vertex measure h must be positive");
      op.h[i] = hv;
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  for (const auto& [ia, ib] : rel.pairs) {
    const double d = distance(ps.points[ia], ps.points[ib]);
    const double b = weights.b_exponent == 0.0 ? 1.0 : std::pow(d, weights.b_exponent);
    if (!(b > 0) || !std::isfinite(b)) throw input_error("assemble: edge weight must be positive");
    const int la = op.local_of_id[ia];
    const int lb = op.local_of_id[ib];
    if (la >= 0 && lb >= 0) {
      trip.emplace_back(la, lb, -b);
      trip.emplace_back(lb, la, -b);
      diag[la] += b;
      diag[lb] += b;
    } else if (boundary == Boundary::dirichlet) {
      // edge leaves the window: dirichlet keeps it on the diagonal
      if (la >= 0) diag[la] += b;
      if (lb >= 0) diag[lb] += b;
    }
  }
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, diag[i]);
  op.A.resize(n, n);
  op.A.setFromTriplets(trip.begin(), trip.end());
  op.max_degree = diag.maxCoeff();
  return op;
}

namespace {

// Symmetrized operator S = H^{-1/2} A H^{-1/2}; L = H^{-1} A = H^{-1/2} S H^{1/2}
Eigen::SparseMatrix<double> symmetrized(const DiscreteOperator& op) {
  const Eigen::VectorXd s = op.h.array().rsqrt();
  return s.asDiagonal() * op.A * s.asDiagonal();
}

}  // namespace

KernelSamples heat_kernel(const DiscreteOperator& op, int source_id,
                          const std::vector<int>& target_ids, const std::vector<double>& times,
                          KernelMethod method, double tol) {
  for (double t : times) {
    if (!(t > 0)) throw input_error("heat_kernel: times must be positive");
  }
  KernelSamples out;
  out.source_id = source_id;
  out.target_ids = target_ids;
  out.times = times;
  out.boundary = op.boundary;
  const int n = static_cast<int>(op.size());
  const int src = op.local(source_id);

  if (method == KernelMethod::automatic) {
    method = n <= kDenseLimit ? KernelMethod::dense_eig : KernelMethod::krylov;
  }
  out.method = method == KernelMethod::dense_eig ? "dense_eig" : "krylov";
  out.values.resize(times.size(), target_ids.size());

  const Eigen::VectorXd hs = op.h.array().sqrt();
  const Eigen::SparseMatrix<double> S = symmetrized(op);

  // p_t(x, y) = (e^{-tL})_{xy} / h(y) = (H^{-1/2} e^{-tS} H^{-1/2})_{xy}
  if (method == KernelMethod::dense_eig) {
    if (n > kDenseLimit) {
      throw input_error("heat_kernel: dense_eig limited to 5000 vertices, use krylov");
    }
    const auto es = eig::dense_sym_eig(Eigen::MatrixXd(S));
    const Eigen::VectorXd qsrc = es.vectors.row(src).transpose();
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const Eigen::VectorXd w = (-times[ti] * es.values.array()).exp().matrix();
      const Eigen::VectorXd col = es.vectors * (w.asDiagonal() * qsrc);
      for (std::size_t yi = 0; yi < target_ids.size(); ++yi) {
        const int ly = op.local(target_ids[yi]);
        out.values(ti, yi) = col[ly] / (hs[src] * hs[ly]);
      }
    }
  } else {
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(n);
    e0[src] = 1.0;
    const auto res = eig::lanczos_expm(S, e0, times, tol);
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      for (std::size_t yi = 0; yi < target_ids.size(); ++yi) {
        const int ly = op.local(target_ids[yi]);
        out.values(ti, yi) = res.cols(ly, ti) / (hs[src] * hs[ly]);
      }
    }
  }
  return out;
}

Eigen::VectorXd apply_semigroup(const DiscreteOperator& op, double t, const Eigen::VectorXd& u,
                                KernelMethod method, double tol) {
  if (!(t >= 0)) throw input_error("apply_semigroup: t must be nonnegative");
  const int n = static_cast<int>(op.size());
  if (u.size() != n) throw input_error("apply_semigroup: size mismatch");
  if (method == KernelMethod::automatic) {
    method = n <= kDenseLimit ? KernelMethod::dense_eig : KernelMethod::krylov;
  }
  const Eigen::VectorXd hs = op.h.array().sqrt();
  const Eigen::SparseMatrix<double> S = symmetrized(op);
  const Eigen::VectorXd v = hs.asDiagonal() * u;  // H^{1/2} u
  Eigen::VectorXd w;
  if (method == KernelMethod::dense_eig) {
    const auto es = eig::dense_sym_eig(Eigen::MatrixXd(S));
    w = es.vectors * ((-t * es.values.array()).exp().matrix().asDiagonal() *
                      (es.vectors.transpose() * v));
  } else {
    w = eig::lanczos_expm(S, v, {t}, tol).cols.col(0);
  }
  return Eigen::VectorXd(op.h.array().rsqrt()).asDiagonal() * w;
}

double truncation_certificate(const NeighborRelation& rel, const Window& window, int source_id,
                              const std::vector<int>& target_ids, const std::vector<double>& times,
                              const WeightSpec& weights, KernelMethod method, double tol) {
  const auto opN = assemble(rel, window, Boundary::neumann, weights);
  const auto opD = assemble(rel, window, Boundary::dirichlet, weights);
  const auto pn = heat_kernel(opN, source_id, target_ids, times, method, tol);
  const auto pd = heat_kernel(opD, source_id, target_ids, times, method, tol);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < pn.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < pn.values.cols(); ++j) {
      worst = std::max(worst, std::abs(pd.values(i, j) - pn.values(i, j)) / pn.values(i, j));
    }
  }
  return worst;
}

}  // namespace delone
