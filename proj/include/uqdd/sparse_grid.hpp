#pragma once

#include <Eigen/Dense>
#include <string>

namespace uqdd {

/// Gauss-Hermite rule for the standard normal weight: integrates polynomials
/// of degree <= 2n-1 exactly, weights sum to 1, nodes symmetric about 0.
struct Quadrature1D {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

Quadrature1D gauss_hermite_1d(int n);

/// Smolyak sparse Gauss-Hermite grid, linear growth: the 1D rule at 0-based
/// level l has l+1 points, so level l is exact for total degree <= 2l+1.
/// Coincident points from different tensor terms are merged with summed
/// weights; weights may be negative but sum to 1.
struct SparseGrid {
    int dim = 0;
    int level = 0;             // 0-based
    Eigen::MatrixXd nodes;     // size() x dim
    Eigen::VectorXd weights;   // size()

    int size() const { return static_cast<int>(weights.size()); }
};

SparseGrid smolyak(int dim, int level);

/// Number of distinct points of smolyak(dim, level).
long node_count(int dim, int level);

/// Published grid levels are 1-based; internal levels are 0-based.
int internal_level(int published_level);

/// CSV with header z1,...,zd,weight.
void write_sparse_grid_csv(const std::string& path, const SparseGrid& grid);

} // namespace uqdd
