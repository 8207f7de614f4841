#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "uqdd/mesh.hpp"

namespace uqdd {

/// Boundary setup on the rectangle. Mixed: fixed head on the left and right
/// edges, zero flux on top and bottom. AllDirichlet: fixed head on all four
/// edges (corners take the left/right value).
enum class BcVariant { Mixed, AllDirichlet };

struct BcCase {
    BcVariant variant = BcVariant::Mixed;
    double left = 0.0;
    double right = 0.0;
    double top = 0.0;
    double bottom = 0.0;

    static BcCase mixed(double left, double right);
    static BcCase all_dirichlet(double left, double right, double top, double bottom);
    /// Same value on all four edges (Dirichlet).
    static BcCase constant(double value);

    double dirichlet_min() const;
    double dirichlet_max() const;
};

/// Assembled symmetric positive definite system with Dirichlet rows
/// eliminated. Unknown u solves the steady diffusion balance
/// -div(a grad u) = f with a five-point finite-volume stencil and
/// harmonic-mean face coefficients.
struct LinearSystem {
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd b;
    std::vector<int> unknown_of_node;  // -1 where Dirichlet
    std::vector<int> node_of_unknown;
    Eigen::VectorXd boundary_values;   // full node vector, 0 where unknown
};

LinearSystem assemble(const StructuredGrid& grid, const Eigen::VectorXd& coeff, const BcCase& bc,
                      const Eigen::VectorXd& source);

/// Direct sparse Cholesky solve with one iterative-refinement pass; throws
/// std::runtime_error if the relative residual stays above 1e-10.
struct DeterministicSolution {
    Eigen::VectorXd values;  // full node vector including Dirichlet nodes
    double residual = 0.0;   // relative, on the eliminated system
};

DeterministicSolution solve(const LinearSystem& sys);

/// Convenience: assemble + solve with coefficient field `coeff` (> 0 at all
/// nodes) and optional source (empty means zero).
Eigen::VectorXd solve_diffusion(const StructuredGrid& grid, const Eigen::VectorXd& coeff,
                                const BcCase& bc, const Eigen::VectorXd& source = {});

} // namespace uqdd
