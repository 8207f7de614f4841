#pragma once

#include <string>

#include "uqdd/basis_adapt.hpp"
#include "uqdd/config.hpp"
#include "uqdd/validation.hpp"

namespace uqdd {

/// Everything the pipelines share, derived from one config.
struct ProblemSetup {
    StructuredGrid grid;
    Eigen::VectorXd weights;
    SubdomainPartition part;
    CovarianceKernel kernel;
    RandomFieldModel model; // input expansion of the log field
    BcCase bc;
    Eigen::VectorXd source; // empty when the constant source is zero
};

ProblemSetup setup_problem(const RunConfig& cfg);

/// Pipelines write their artifacts under `out` (created if missing) and
/// print a short progress trace. They throw on numerical failure.
void cmd_kl(const RunConfig& cfg, const std::string& out);
void cmd_full(const RunConfig& cfg, const std::string& out);
void cmd_adapt(const RunConfig& cfg, const std::string& out);
void cmd_mc(const RunConfig& cfg, const std::string& out);

/// Compares the moment fields (and PDF samples, when both sides have them)
/// of two finished run directories.
void cmd_compare(const RunConfig& cfg, const std::string& dir_a, const std::string& dir_b,
                 const std::string& out);

/// Full study: kl, full, adapt, mc, then the pairwise comparisons, under one
/// output root.
void cmd_bench(const RunConfig& cfg, const std::string& out);

} // namespace uqdd
