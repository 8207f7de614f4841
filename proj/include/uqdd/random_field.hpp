#pragma once

#include <Eigen/Dense>
#include <string>

#include "uqdd/mesh.hpp"

namespace uqdd {

/// How the log-field variance is derived from the physical mean a0 and
/// spread parameter sigma_a:
///   SigmaRatio:    sigma_g^2 = ln(1 + sigma_a   / a0^2)
///   VarianceRatio: sigma_g^2 = ln(1 + sigma_a^2 / a0^2)
enum class VarianceConvention { SigmaRatio, VarianceRatio };

struct LognormalSpec {
    double a0 = 1.0;
    double sigma_a = 0.0;
    double g0 = 0.0;      // mean of the log field
    double sigma_g = 0.0; // std of the log field
    VarianceConvention convention = VarianceConvention::SigmaRatio;
};

/// Matches moments so that exp of the Gaussian log field has mean a0:
/// g0 = ln(a0) - sigma_g^2 / 2. Requires a0 > 0, sigma_a >= 0.
LognormalSpec lognormal_params(double a0, double sigma_a,
                               VarianceConvention convention = VarianceConvention::SigmaRatio);

/// Squared-exponential covariance of the log field with per-direction
/// correlation lengths: sigma_g^2 exp(-dx1^2/l1^2 - dx2^2/l2^2).
struct CovarianceKernel {
    double sigma_g = 1.0;
    double l1 = 1.0;
    double l2 = 1.0;

    double operator()(double x1, double y1, double x2, double y2) const;
};

/// Truncated expansion of the log field over grid nodes:
/// g(x, xi) = g0 + sum_i sqrt(lambda_i) modes(x, i) xi_i.
struct RandomFieldModel {
    LognormalSpec lognormal;
    Eigen::VectorXd lambda;                   // d, descending, nonnegative
    Eigen::MatrixXd modes;                    // n_nodes x d, w-orthonormal
    double captured_variance_fraction = 0.0;  // sum(lambda) / (sigma_g^2 |D|)

    int dim() const { return static_cast<int>(lambda.size()); }
};

/// Discrete eigensolve of the weighted covariance operator on the grid.
/// Clamps tiny negative eigenvalues to zero; throws if a requested eigenvalue
/// is materially negative.
RandomFieldModel kl_solve(const CovarianceKernel& kernel, const LognormalSpec& lognormal,
                          const StructuredGrid& grid, const Eigen::VectorXd& w, int d);

/// Log field realization at all nodes for germ xi (xi.size() == dim()).
Eigen::VectorXd realize_log(const RandomFieldModel& model, const Eigen::VectorXd& xi);

/// Physical coefficient field exp(g).
Eigen::VectorXd realize_coeff(const RandomFieldModel& model, const Eigen::VectorXd& xi);

void write_eigenvalue_csv(const std::string& path, const Eigen::VectorXd& values);
void write_mode_csv(const std::string& path, const StructuredGrid& grid,
                    const RandomFieldModel& model);

} // namespace uqdd
