#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "uqdd/diffusion.hpp"
#include "uqdd/random_field.hpp"

namespace uqdd {

/// Numerically stable streaming mean/variance over vector samples
/// (Welford update). Variance uses the n-1 divisor.
class StreamingMoments {
public:
    explicit StreamingMoments(int size);

    void update(const Eigen::VectorXd& sample);
    long count() const { return n_; }
    const Eigen::VectorXd& mean() const { return mean_; }
    Eigen::VectorXd variance() const;
    Eigen::VectorXd stddev() const;
    Eigen::VectorXd standard_error() const; // of the mean

private:
    long n_ = 0;
    Eigen::VectorXd mean_;
    Eigen::VectorXd m2_;
};

struct McReference {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
    Eigen::VectorXd standard_error;
    long samples = 0;
    double field_min = 0.0; // extremes over every sampled solution
    double field_max = 0.0;
};

/// Monte Carlo reference: n independent germ draws (counter generator,
/// stream = sample index), one deterministic solve each, Welford reduction
/// in sample order regardless of worker count.
McReference mc_reference(const RandomFieldModel& model, const StructuredGrid& grid,
                         const BcCase& bc, long n, std::uint64_t seed,
                         const Eigen::VectorXd& source, int workers);

/// Weighted relative L2 distance over a node subset (empty = all nodes):
/// sqrt(sum w (f-g)^2 / sum w g^2). Throws if the reference norm vanishes.
double rel_l2_error(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const Eigen::VectorXd& w,
                    const std::vector<int>& nodes = {});

/// Two-sample Kolmogorov-Smirnov statistic: sup |F_a - F_b|.
double ks_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

} // namespace uqdd
