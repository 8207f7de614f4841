#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace uqdd {

/// Deterministic counter-based generator: each (seed, stream) pair yields an
/// independent reproducible sequence, so sample i can be drawn as stream i
/// regardless of evaluation order or thread count.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double next_uniform(); // (0, 1)
    double next_normal();  // standard normal, Box-Muller

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// d iid standard normals for sample index `stream` under `seed`.
Eigen::VectorXd standard_normal_vector(std::uint64_t seed, std::uint64_t stream, int d);

} // namespace uqdd
