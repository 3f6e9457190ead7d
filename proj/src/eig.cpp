#include "delone/eig.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <functional>

namespace delone::eig {

SymEig dense_sym_eig(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw numerical_error("dense_sym_eig: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

SymEig dense_gen_eig(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  if (es.info() != Eigen::Success) throw numerical_error("dense_gen_eig: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

int inertia_below(const SpMat& K, const SpMat& M, double lambda) {
  double nudge = 0.0;
  const double scale = std::max(1.0, std::abs(lambda));
  for (int attempt = 0; attempt < 8; ++attempt) {
    SpMat A = K - (lambda + nudge) * M;
    Eigen::SimplicialLDLT<SpMat> ldlt(A);
    if (ldlt.info() == Eigen::Success) {
      const auto& D = ldlt.vectorD();
      bool finite = true;
      int neg = 0;
      for (Eigen::Index i = 0; i < D.size(); ++i) {
        if (!std::isfinite(D[i])) {
          finite = false;
          break;
        }
        if (D[i] < 0) ++neg;
      }
      if (finite) return neg;
    }
    nudge = (nudge == 0.0 ? 1e-9 : nudge * 32.0) * scale;
  }
  throw numerical_error("inertia_below: LDLt factorization kept failing near lambda");
}

namespace {

// Eigendecomposition of the Lanczos tridiagonal.
SymEig tridiag_eig(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const int m = static_cast<int>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
  for (int i = 0; i + 1 < m; ++i) sub[i] = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub);
  if (es.info() != Eigen::Success) throw numerical_error("tridiag_eig: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

SymEig eigenpairs_below(const SpMat& K, const SpMat& M, double lambda_cut,
                        const LanczosOptions& opt) {
  const Eigen::Index n = K.rows();
  const double sigma = opt.shift;
  if (sigma >= 0) throw input_error("eigenpairs_below: shift must be negative");

  SpMat A = K - sigma * M;
  Eigen::SimplicialLDLT<SpMat> solver(A);
  if (solver.info() != Eigen::Success) {
    throw numerical_error("eigenpairs_below: factorization of K - sigma*M failed");
  }

  const int expected = inertia_below(K, M, lambda_cut);
  if (expected == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(n, 0)};

  const int max_basis = std::min<int>(opt.max_basis, static_cast<int>(n));
  int cap = std::min<int>(max_basis, std::max(64, expected + 64));

  Eigen::MatrixXd V(n, cap);
  std::vector<double> alpha, beta;

  // deterministic pseudo-random start vector
  Eigen::VectorXd v(n);
  {
    Rng rng(0x5eed5eedULL);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  }
  Eigen::VectorXd Mv = M * v;
  v /= std::sqrt(v.dot(Mv));
  V.col(0) = v;

  const double theta_cut = 1.0 / (lambda_cut - sigma);

  // Ritz pairs with theta above the cut whose residual bound passed
  auto converged_targets = [&](const SymEig& te, int m, double b) {
    std::vector<int> sel;
    for (int i = 0; i < m; ++i) {
      const double theta = te.values[i];
      if (theta <= theta_cut) continue;
      const double resid = b * std::abs(te.vectors(m - 1, i));
      if (resid <= opt.ritz_tol * std::max(theta, 1e-3)) sel.push_back(i);
    }
    // largest theta = smallest lambda
    std::sort(sel.begin(), sel.end(), [&](int i, int j) { return te.values[i] > te.values[j]; });
    return sel;
  };

  int m = 0;
  while (true) {
    // one Lanczos step in the M inner product on (K - sigma M)^{-1} M
    Eigen::VectorXd w = solver.solve(M * V.col(m));
    const double a = w.dot(M * V.col(m));
    alpha.push_back(a);
    w -= a * V.col(m);
    if (m > 0) w -= beta[m - 1] * V.col(m - 1);
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd coef = V.leftCols(m + 1).transpose() * (M * w);
      w -= V.leftCols(m + 1) * coef;
    }
    const double b = std::sqrt(std::max(0.0, w.dot(M * w)));
    beta.push_back(b);
    ++m;

    const bool invariant = b < 1e-13;
    const bool at_hard_cap = m >= max_basis;
    if (invariant || at_hard_cap || m >= cap || m % opt.check_every == 0) {
      const SymEig te = tridiag_eig(alpha, beta);
      auto sel = converged_targets(te, m, invariant ? 0.0 : b);
      if (static_cast<int>(sel.size()) >= expected) {
        sel.resize(expected);
        SymEig out;
        out.values.resize(expected);
        Eigen::MatrixXd S(m, expected);
        for (int i = 0; i < expected; ++i) {
          out.values[i] = sigma + 1.0 / te.values[sel[i]];
          S.col(i) = te.vectors.col(sel[i]);
        }
        out.vectors = V.leftCols(m) * S;
        // the inertia count certified completeness; sanity-check residuals
        Eigen::MatrixXd R = K * out.vectors - (M * out.vectors) * out.values.asDiagonal();
        const double worst = R.colwise().norm().maxCoeff();
        if (worst > 1e-6 * std::max(1.0, std::abs(out.values[expected - 1]))) {
          throw numerical_error("eigenpairs_below: residual check failed");
        }
        return out;
      }
      if (invariant || at_hard_cap) {
        throw numerical_error(
            "eigenpairs_below: Krylov basis exhausted before the spectrum below the cut "
            "converged");
      }
    }
    if (m >= cap) {
      cap = std::min(max_basis, cap + std::max(256, cap / 2));
      V.conservativeResize(Eigen::NoChange, cap);
    }
    V.col(m) = w / b;
  }
}

namespace {

ExpmResult lanczos_expm_impl(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_a,
                             const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_m,
                             const Eigen::VectorXd& v, const std::vector<double>& times,
                             double tol, int max_iter) {
  const Eigen::Index n = v.size();
  const int cap = std::min<int>(max_iter, static_cast<int>(n));
  Eigen::MatrixXd V(n, cap);
  std::vector<double> alpha, beta;

  const double vnorm = std::sqrt(v.dot(apply_m(v)));
  if (vnorm == 0) throw input_error("lanczos_expm: zero start vector");
  V.col(0) = v / vnorm;

  ExpmResult out;
  out.cols.resize(n, static_cast<Eigen::Index>(times.size()));
  out.err_est.assign(times.size(), std::numeric_limits<double>::infinity());

  int m = 0;
  while (true) {
    Eigen::VectorXd w = apply_a(V.col(m));
    const double a = w.dot(apply_m(V.col(m)));
    alpha.push_back(a);
    w -= a * V.col(m);
    if (m > 0) w -= beta[m - 1] * V.col(m - 1);
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd coef = V.leftCols(m + 1).transpose() * apply_m(w);
      w -= V.leftCols(m + 1) * coef;
    }
    const double b = std::sqrt(std::max(0.0, w.dot(apply_m(w))));
    beta.push_back(b);
    ++m;

    const bool invariant = b < 1e-14;
    if (invariant || m == cap || m % 10 == 0) {
      const SymEig te = tridiag_eig(alpha, beta);
      bool done = true;
      for (std::size_t ti = 0; ti < times.size(); ++ti) {
        Eigen::VectorXd y =
            te.vectors * ((-times[ti] * te.values.array()).exp().matrix().asDiagonal() *
                          te.vectors.row(0).transpose());
        out.err_est[ti] = invariant ? 0.0 : b * std::abs(y[m - 1]);
        out.cols.col(static_cast<Eigen::Index>(ti)) = vnorm * (V.leftCols(m) * y);
        if (out.err_est[ti] > tol) done = false;
      }
      out.iterations = m;
      if (done || invariant) return out;
      if (m == cap) {
        throw numerical_error("lanczos_expm: tolerance not reached within the iteration cap");
      }
    }
    V.col(m) = w / b;
  }
}

}  // namespace

ExpmResult lanczos_expm(const SpMat& A, const Eigen::VectorXd& v,
                        const std::vector<double>& times, double tol, int max_iter) {
  return lanczos_expm_impl([&](const Eigen::VectorXd& x) { return Eigen::VectorXd(A * x); },
                           [](const Eigen::VectorXd& x) { return x; }, v, times, tol, max_iter);
}

ExpmResult lanczos_expm_gen(const SpMat& K, const SpMat& M, const Eigen::VectorXd& v,
                            const std::vector<double>& times, double tol, int max_iter) {
  Eigen::SimplicialLDLT<SpMat> msolver(M);
  if (msolver.info() != Eigen::Success) {
    throw numerical_error("lanczos_expm_gen: mass matrix factorization failed");
  }
  return lanczos_expm_impl(
      [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(msolver.solve(K * x)); },
      [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(M * x); }, v, times, tol, max_iter);
}

}  // namespace delone::eig
