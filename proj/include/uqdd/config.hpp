#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uqdd/diffusion.hpp"
#include "uqdd/random_field.hpp"

namespace uqdd {

/// Carries every problem found in a config file, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

/// One benchmark run. Defaults reproduce the published setup; grid levels are
/// 1-based as published.
struct RunConfig {
    // [geometry]
    double x1_min = 0.0, x1_max = 240.0;
    double x2_min = 0.0, x2_max = 60.0;
    int n1 = 97, n2 = 25;

    // [field]
    double a0 = 5.0;
    double sigma_a = 2.5;
    double l1 = 24.0, l2 = 20.0;
    VarianceConvention convention = VarianceConvention::SigmaRatio;

    // [stochastic]
    int dim = 10;
    int order = 3;
    int level_full = 5;
    int level_coarse = 3;
    int level_adapted = 5;
    int reduced_dim = 3;             // 0 means auto
    double reduced_dim_tolerance = 0.05;
    int coarse_spatial_factor = 1;

    // [partition]
    int nx = 4, ny = 2;

    // [bc]
    BcVariant bc_variant = BcVariant::Mixed;
    double bc_left = 100.0, bc_right = 10.0, bc_top = 0.0, bc_bottom = 0.0;
    double source = 0.0; // constant volumetric source

    // [pdf]
    std::vector<std::pair<double, double>> pdf_points = {
        {24.0, 15.0}, {81.0, 15.0}, {150.0, 15.0}, {210.0, 15.0},
        {210.0, 45.0}, {150.0, 45.0}, {81.0, 45.0}, {24.0, 45.0}};
    int pdf_samples = 100000;

    // [run]
    std::uint64_t seed = 42;
    int workers = 0; // 0 = all hardware threads
    long mc_samples = 10000;
    std::string out = "out";

    Rect box() const { return {x1_min, x1_max, x2_min, x2_max}; }
    BcCase bc() const;
};

/// Parses `[section]` / `key = value` text with `#` comments. Unknown
/// sections or keys, malformed values, and inconsistent combinations are all
/// reported together in one ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

} // namespace uqdd
