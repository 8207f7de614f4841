#pragma once

#include <Eigen/Dense>

namespace uqdd {

/// Leading eigenpairs of a symmetric matrix, eigenvalues descending and
/// eigenvectors l2-orthonormal. Dense solve for small matrices, seeded
/// randomized subspace iteration above `dense_limit`; both paths are
/// deterministic.
struct EigResult {
    Eigen::VectorXd values;  // k, descending
    Eigen::MatrixXd vectors; // n x k
};

EigResult symmetric_topk(const Eigen::MatrixXd& B, int k, int dense_limit = 600);

/// Top-k of the weighted kernel eigenproblem: eigenpairs of
/// diag(sqrt(w)) K diag(sqrt(w)), with eigenvectors rescaled by 1/sqrt(w) so
/// the returned modes are orthonormal in the w-weighted inner product.
/// Sign convention: each mode's largest-magnitude entry is positive (first
/// such entry wins ties).
struct WeightedEig {
    Eigen::VectorXd values;
    Eigen::MatrixXd modes; // n x k, w-orthonormal
};

WeightedEig weighted_kernel_eig(const Eigen::MatrixXd& K, const Eigen::VectorXd& w, int k);

/// Applies the largest-magnitude-entry-positive convention to each column,
/// returning the applied signs (+1/-1 per column).
Eigen::VectorXd fix_mode_signs(Eigen::MatrixXd& modes);

} // namespace uqdd
