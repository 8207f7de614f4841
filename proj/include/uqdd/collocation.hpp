#pragma once

#include <Eigen/Dense>
#include <functional>

#include "uqdd/chaos.hpp"
#include "uqdd/diffusion.hpp"
#include "uqdd/random_field.hpp"
#include "uqdd/sparse_grid.hpp"

namespace uqdd {

/// Spatial field for one germ sample.
using SpatialSampler = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct CollocationRun {
    PCSolution solution;
    long solves = 0;
    double field_min = 0.0; // extremes over every collocation solution
    double field_max = 0.0;
};

/// Non-intrusive projection: coeffs(:, i) = sum_q w_q u(ξ_q) psi_i(ξ_q).
/// Samples are evaluated in parallel batches but accumulated in grid order,
/// so coefficients are bit-identical for any worker count. Rejects grids
/// whose polynomial exactness cannot resolve the basis (level < order).
CollocationRun project_collocation(const SparseGrid& grid, const MultiIndexSet& basis,
                                   const SpatialSampler& fn, int n_spatial, int workers);

/// Full-dimensional reference run: order-`order` chaos in all `model.dim()`
/// input variables on the sparse grid at `level` (0-based).
CollocationRun run_full(const RandomFieldModel& model, const StructuredGrid& grid,
                        const BcCase& bc, int order, int level, const Eigen::VectorXd& source,
                        int workers);

/// Degree <= 1 part of an expansion: the Gaussian sketch the adaptation is
/// built from. Coefficient columns 0..d carry over unchanged.
PCSolution gaussian_part(const PCSolution& pc);

/// Cheap first-order run used to seed the adaptation: order 1 at a low grid
/// level. spatial_factor > 1 additionally coarsens the spatial mesh by that
/// factor per direction (must divide the cell counts) and lifts each solve
/// back to the fine mesh bilinearly.
CollocationRun run_coarse_gaussian(const RandomFieldModel& model, const StructuredGrid& grid,
                                   const BcCase& bc, int level, const Eigen::VectorXd& source,
                                   int workers, int spatial_factor = 1);

} // namespace uqdd
