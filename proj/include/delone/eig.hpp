#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "delone/common.hpp"

namespace delone::eig {

using SpMat = Eigen::SparseMatrix<double>;

struct SymEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns; M-orthonormal in the generalized case
};

/// Full eigendecomposition of a dense symmetric matrix.
SymEig dense_sym_eig(const Eigen::MatrixXd& A);

/// Full decomposition of K v = lambda M v with M positive definite.
SymEig dense_gen_eig(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M);

/// Number of eigenvalues of the pencil (K, M) strictly below lambda, by
/// Sylvester inertia of K - lambda M (LDLt). Nudges lambda slightly when the
/// factorization is unlucky.
int inertia_below(const SpMat& K, const SpMat& M, double lambda);

struct LanczosOptions {
  double shift = -1.0;       // sigma < 0 keeps K - sigma*M positive definite
  int max_basis = 6000;      // hard cap on the Krylov dimension
  int check_every = 48;      // Ritz convergence test cadence
  double ritz_tol = 1e-10;   // residual bound on transformed Ritz pairs
};

/// All eigenpairs of (K, M) with lambda <= lambda_cut via shift-invert
/// Lanczos with full reorthogonalization in the M inner product. The count is
/// certified complete against the inertia of K - lambda*M; failure to certify
/// raises numerical_error.
SymEig eigenpairs_below(const SpMat& K, const SpMat& M, double lambda_cut,
                        const LanczosOptions& opt = {});

struct ExpmResult {
  Eigen::MatrixXd cols;          // n x times: approximations of e^{-tA} v
  std::vector<double> err_est;   // a-posteriori estimate per time
  int iterations = 0;
};

/// Lanczos approximation of e^{-tA} v for symmetric sparse A in the standard
/// inner product. One basis serves all times.
ExpmResult lanczos_expm(const SpMat& A, const Eigen::VectorXd& v,
                        const std::vector<double>& times, double tol, int max_iter = 600);

/// Same for A = M^{-1} K, symmetric in the M inner product (M positive
/// definite).
ExpmResult lanczos_expm_gen(const SpMat& K, const SpMat& M, const Eigen::VectorXd& v,
                            const std::vector<double>& times, double tol, int max_iter = 600);

}  // namespace delone::eig
