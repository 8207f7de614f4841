#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "uqdd/collocation.hpp"

namespace uqdd {

/// Spatial covariance of the Gaussian sketch restricted to one subdomain:
/// C_s(x, y) = sum_j u_j(x) u_j(y) over the degree-1 coefficients u_j, held
/// in factored form (rows of `factor` are nodes, columns input directions).
struct SubdomainCovariance {
    int subdomain = 0;
    std::vector<int> node_ids;  // global ids of the owned nodes
    Eigen::MatrixXd factor;     // n_s x d

    Eigen::MatrixXd dense() const { return factor * factor.transpose(); }
};

/// Requires an expansion in the input germ with order >= 1.
SubdomainCovariance subdomain_covariance(const PCSolution& gauss, const SubdomainPartition& part,
                                         int s);

/// Weighted eigenpairs of the subdomain covariance: mu descending (clamped
/// at zero), phi w-orthonormal over the subdomain nodes. The spectrum has at
/// most d nonzero entries since the covariance has rank <= d.
struct SubdomainSpectrum {
    Eigen::VectorXd mu;
    Eigen::MatrixXd phi; // n_s x k
};

SubdomainSpectrum hilbert_kl(const SubdomainCovariance& cov, const Eigen::VectorXd& w_s, int k);

/// Orthogonal change of variables eta = A xi for one subdomain. The first r
/// rows are the adapted directions a_ij = <u_j, phi_i>_w / sqrt(mu_i); the
/// remaining rows complete the square isometry by Gram-Schmidt over
/// coordinate seeds. Rows are signed so the largest-magnitude entry of each
/// is positive; the leading rows flip together with their eigenfunctions.
struct AdaptationMap {
    int subdomain = 0;
    int r = 0;
    Eigen::VectorXd mu;        // full subdomain spectrum
    Eigen::MatrixXd phi;       // n_s x r, matching the leading rows
    Eigen::MatrixXd A;         // d x d, A A^T = I
    std::vector<int> node_ids;
};

AdaptationMap build_isometry(const SubdomainCovariance& cov, const SubdomainSpectrum& spectrum,
                             const Eigen::VectorXd& w_s, int r);

/// Covariance -> spectrum -> isometry in one step; w is the global weight
/// vector.
AdaptationMap adapt_subdomain(const PCSolution& gauss, const SubdomainPartition& part,
                              const Eigen::VectorXd& w, int s, int r);

/// Fraction of subdomain variance discarded by keeping r directions:
/// sum_{i>r} mu_i / sum_i mu_i.
double truncation_error_indicator(const Eigen::VectorXd& mu, int r);

/// Smallest r whose discarded fraction is <= tolerance.
int choose_reduced_dim(const Eigen::VectorXd& mu, double tolerance);

/// Reduced germ samples mapped back to input space: xi = A_r^T eta, one row
/// per point.
Eigen::MatrixXd map_nodes(const AdaptationMap& map, const Eigen::MatrixXd& eta_points);

/// Reduced collocation run in the adapted variables of one subdomain. Each
/// solve spans the whole domain; only the owned nodes are trusted and kept by
/// stitching.
CollocationRun run_adapted(const RandomFieldModel& model, const StructuredGrid& grid,
                           const BcCase& bc, const AdaptationMap& map, int order, int level,
                           const Eigen::VectorXd& source, int workers);

/// Per-node disagreement where two subdomains meet: both reduced solutions
/// evaluated at the shared node.
struct InterfaceGap {
    int node = 0;
    int owner = 0;
    int neighbor = 0;
    double mean_gap = 0.0;
    double std_gap = 0.0;
};

/// Global fields assembled from the per-subdomain expansions by ownership.
struct StitchedSolution {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
    std::vector<InterfaceGap> gaps;
    double max_mean_gap = 0.0;
    double max_std_gap = 0.0;
};

StitchedSolution stitch(const std::vector<PCSolution>& parts, const SubdomainPartition& part,
                        const StructuredGrid& grid);

/// Solve-count ledger for a pipeline; `total()` is the headline cost.
struct CostAccounting {
    std::vector<std::pair<std::string, long>> stages;

    void add(const std::string& stage, long solves) { stages.emplace_back(stage, solves); }
    long total() const;
    void write_csv(const std::string& path) const;
};

void write_isometry_csv(const std::string& path, const AdaptationMap& map);

} // namespace uqdd
