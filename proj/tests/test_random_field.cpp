#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uqdd/random_field.hpp"
#include "uqdd/rng.hpp"

using namespace uqdd;

namespace {
const Rect kBench{0.0, 240.0, 0.0, 60.0};
}

TEST_CASE("lognormal parameters, sigma-ratio convention") {
    const LognormalSpec spec = lognormal_params(5.0, 2.5);
    // sigma_g = sqrt(ln(1 + 2.5/25)) = sqrt(ln 1.1)
    CHECK(spec.sigma_g == doctest::Approx(std::sqrt(std::log(1.1))).epsilon(1e-15));
    CHECK(spec.sigma_g == doctest::Approx(0.3087234681787649).epsilon(1e-13));
    CHECK(spec.g0 == doctest::Approx(std::log(5.0) - 0.5 * std::log(1.1)).epsilon(1e-15));
    CHECK(spec.g0 == doctest::Approx(1.5617828225319379).epsilon(1e-13));
}

TEST_CASE("lognormal parameters, variance-ratio convention") {
    const LognormalSpec spec = lognormal_params(5.0, 2.5, VarianceConvention::VarianceRatio);
    CHECK(spec.sigma_g == doctest::Approx(std::sqrt(std::log(1.25))).epsilon(1e-15));
    CHECK(spec.g0 == doctest::Approx(std::log(5.0) - 0.5 * std::log(1.25)).epsilon(1e-15));
}

TEST_CASE("lognormal mean is preserved") {
    // E[exp(g)] = exp(g0 + sigma_g^2/2) = a0 under both conventions
    for (auto conv : {VarianceConvention::SigmaRatio, VarianceConvention::VarianceRatio}) {
        const LognormalSpec spec = lognormal_params(5.0, 2.5, conv);
        CHECK(std::exp(spec.g0 + 0.5 * spec.sigma_g * spec.sigma_g) ==
              doctest::Approx(5.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(lognormal_params(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lognormal_params(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("covariance kernel values") {
    const CovarianceKernel kernel{0.5, 24.0, 20.0};
    CHECK(kernel(10, 10, 5, 5) == doctest::Approx(0.25).epsilon(1e-15));
    const double v = kernel(0.0, 24.0, 0.0, 0.0);
    CHECK(v == doctest::Approx(0.25 * std::exp(-1.0)).epsilon(1e-14));
    const double w = kernel(0.0, 0.0, 0.0, 20.0);
    CHECK(w == doctest::Approx(0.25 * std::exp(-1.0)).epsilon(1e-14));
    // separable product of the two directions
    const double both = kernel(0.0, 24.0, 0.0, 20.0);
    CHECK(both == doctest::Approx(0.25 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("kl modes are w-orthonormal with decaying spectrum") {
    const StructuredGrid grid = build_grid(kBench, 25, 7);
    const Eigen::VectorXd w = quad_weights(grid);
    const LognormalSpec spec = lognormal_params(5.0, 2.5);
    const CovarianceKernel kernel{spec.sigma_g, 24.0, 20.0};
    const int d = 6;
    const RandomFieldModel model = kl_solve(kernel, spec, grid, w, d);

    REQUIRE(model.dim() == d);
    for (int i = 1; i < d; ++i)
        CHECK(model.lambda[i] <= model.lambda[i - 1] + 1e-12);
    CHECK(model.lambda[d - 1] >= 0.0);
    CHECK(model.lambda[0] > 0.0);

    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            const double ip =
                (model.modes.col(i).array() * model.modes.col(j).array() * w.array()).sum();
            CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
        }

    // six modes on the large anisotropic domain capture a moderate share of
    // the total log-field variance; the exact fraction is grid-dependent
    CHECK(model.captured_variance_fraction > 0.3);
    CHECK(model.captured_variance_fraction < 1.0);
}

TEST_CASE("kl spectrum is stable under grid refinement") {
    const LognormalSpec spec = lognormal_params(5.0, 2.5);
    const CovarianceKernel kernel{spec.sigma_g, 24.0, 20.0};
    const int d = 5;

    const StructuredGrid coarse = build_grid(kBench, 25, 7);
    const StructuredGrid fine = build_grid(kBench, 49, 13);
    const RandomFieldModel mc = kl_solve(kernel, spec, coarse, quad_weights(coarse), d);
    const RandomFieldModel mf = kl_solve(kernel, spec, fine, quad_weights(fine), d);

    // smooth kernel: the discrete eigenvalues converge under refinement, with
    // the trapezoid-weighted estimates moving by at most a couple percent
    for (int i = 0; i < d; ++i)
        CHECK(mc.lambda[i] == doctest::Approx(mf.lambda[i]).epsilon(2.5e-2));
}

TEST_CASE("realizations reproduce the log statistics") {
    const StructuredGrid grid = build_grid(kBench, 13, 5);
    const Eigen::VectorXd w = quad_weights(grid);
    const LognormalSpec spec = lognormal_params(5.0, 2.5);
    const CovarianceKernel kernel{spec.sigma_g, 24.0, 20.0};
    const RandomFieldModel model = kl_solve(kernel, spec, grid, w, 8);

    CHECK(realize_log(model, Eigen::VectorXd::Zero(8)).isApproxToConstant(spec.g0, 1e-13));
    CHECK(realize_coeff(model, Eigen::VectorXd::Zero(8))
              .isApproxToConstant(std::exp(spec.g0), 1e-12));

    // Monte Carlo variance at a center node approaches the captured variance
    const int node = grid.index(6, 2);
    double raw = 0.0;
    for (int i = 0; i < 8; ++i)
        raw += model.lambda[i] * model.modes(node, i) * model.modes(node, i);

    const int n = 50000;
    double sum = 0.0, sq = 0.0;
    for (int s = 0; s < n; ++s) {
        const double g = realize_log(model, standard_normal_vector(31, s, 8))[node];
        sum += g;
        sq += g * g;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(spec.g0).epsilon(5e-3));
    CHECK(var == doctest::Approx(raw).epsilon(0.05));

    CHECK_THROWS_AS(realize_log(model, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("kl solve validates arguments") {
    const StructuredGrid grid = build_grid(kBench, 5, 3);
    const Eigen::VectorXd w = quad_weights(grid);
    const LognormalSpec spec = lognormal_params(5.0, 2.5);
    const CovarianceKernel kernel{spec.sigma_g, 24.0, 20.0};
    CHECK_THROWS_AS(kl_solve(kernel, spec, grid, w, 0), std::invalid_argument);
    CHECK_THROWS_AS(kl_solve(kernel, spec, grid, w, 16), std::invalid_argument);
    CHECK_THROWS_AS(kl_solve(kernel, spec, grid, Eigen::VectorXd::Ones(3), 2),
                    std::invalid_argument);
}
