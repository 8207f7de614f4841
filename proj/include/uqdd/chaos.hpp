#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace uqdd {

struct StructuredGrid;

/// Normalized probabilists' Hermite polynomial of degree n: orthonormal under
/// the standard normal weight, E[h_m h_n] = delta_mn.
double hermite_eval(int n, double x);

/// h_0(x) .. h_p(x) in one recurrence pass.
Eigen::VectorXd hermite_all(int p, double x);

/// Total-degree multi-index set in graded lexicographic order: degree first,
/// then earlier coordinates carry higher degree first. Index 0 is the zero
/// index; indices 1..d are the unit vectors e_1..e_d in coordinate order.
struct MultiIndexSet {
    int dim = 0;
    int order = 0;
    std::vector<std::vector<int>> indices;

    int size() const { return static_cast<int>(indices.size()); }
    static MultiIndexSet total_degree(int dim, int order);
};

/// C(d+p, p), the size of the total-degree set.
long basis_size(int d, int p);

/// Product Hermite basis function psi_i at point z (z.size() == dim).
double psi_eval(const MultiIndexSet& set, int i, const Eigen::VectorXd& z);

/// All basis values at z as one row.
Eigen::VectorXd psi_row(const MultiIndexSet& set, const Eigen::VectorXd& z);

/// Which germ a chaos expansion is written in: the global input variables or
/// a subdomain's rotated, reduced variables.
enum class Germ { Input, Adapted };

/// Nodal polynomial chaos expansion: coeffs(k, i) multiplies basis function i
/// at spatial node k. Orthonormality makes mean and variance read off the
/// coefficients directly.
struct PCSolution {
    MultiIndexSet basis;
    Eigen::MatrixXd coeffs; // n_nodes x basis.size()
    Germ germ = Germ::Input;
    int subdomain = 0;      // 1-based when germ == Adapted, else 0

    int num_nodes() const { return static_cast<int>(coeffs.rows()); }
};

/// Surrogate value at spatial node k for germ sample z.
double surrogate_eval(const PCSolution& pc, int k, const Eigen::VectorXd& z);

/// Mean and standard deviation fields: mean = coeffs.col(0),
/// var = sum of squares of the higher coefficients.
struct MomentFields {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
};

MomentFields moments(const PCSolution& pc);

/// n surrogate samples at node k, germ drawn iid standard normal from the
/// counter generator under (seed, stream = sample index).
Eigen::VectorXd sample_surrogate(const PCSolution& pc, int k, int n, std::uint64_t seed);

/// Gaussian kernel density estimate with Silverman bandwidth on a uniform
/// support grid. Degenerate (zero spread) samples set `degenerate` and leave
/// the density empty.
struct PdfEstimate {
    double x1 = 0.0;
    double x2 = 0.0;
    int node = 0;
    Eigen::VectorXd samples;
    Eigen::VectorXd support;
    Eigen::VectorXd density;
    bool degenerate = false;
};

/// Requires n_samples >= 100; evaluates the surrogate at the grid node
/// nearest to (x1, x2).
PdfEstimate pdf_estimate(const PCSolution& pc, const StructuredGrid& grid, double x1, double x2,
                         int n_samples, std::uint64_t seed);

/// KDE for externally produced samples (same bandwidth rule).
PdfEstimate kde(const Eigen::VectorXd& samples);

} // namespace uqdd
