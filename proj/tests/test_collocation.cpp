#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uqdd/collocation.hpp"

using namespace uqdd;

namespace {

const Rect kBench{0.0, 240.0, 0.0, 60.0};

RandomFieldModel small_model(const StructuredGrid& grid, int d) {
    const LognormalSpec spec = lognormal_params(5.0, 2.5);
    const CovarianceKernel kernel{spec.sigma_g, 24.0, 20.0};
    return kl_solve(kernel, spec, grid, quad_weights(grid), d);
}

} // namespace

TEST_CASE("projection recovers polynomials of the germ exactly") {
    const int d = 3, p = 2, level = 2;
    const SparseGrid sg = smolyak(d, level);
    const MultiIndexSet basis = MultiIndexSet::total_degree(d, p);

    // target is itself a chaos expansion: u(xi) = 2 - psi_2 + 0.5 psi_7
    auto fn = [&](const Eigen::VectorXd& z) {
        Eigen::VectorXd u(1);
        u[0] = 2.0 - psi_eval(basis, 2, z) + 0.5 * psi_eval(basis, 7, z);
        return u;
    };
    const CollocationRun run = project_collocation(sg, basis, fn, 1, 1);
    CHECK(run.solves == sg.size());
    for (int i = 0; i < basis.size(); ++i) {
        const double expected = i == 0 ? 2.0 : (i == 2 ? -1.0 : (i == 7 ? 0.5 : 0.0));
        CHECK(run.solution.coeffs(0, i) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("projection tracks the sampled field extremes") {
    const SparseGrid sg = smolyak(2, 1);
    const MultiIndexSet basis = MultiIndexSet::total_degree(2, 1);
    auto fn = [&](const Eigen::VectorXd& z) {
        Eigen::VectorXd u(2);
        u[0] = z[0];
        u[1] = -z[1];
        return u;
    };
    const CollocationRun run = project_collocation(sg, basis, fn, 2, 1);
    const double top = smolyak(2, 1).nodes.cwiseAbs().maxCoeff();
    CHECK(run.field_max == doctest::Approx(top).epsilon(1e-14));
    CHECK(run.field_min == doctest::Approx(-top).epsilon(1e-14));
}

TEST_CASE("projection rejects an underpowered grid") {
    const SparseGrid sg = smolyak(3, 1);
    const MultiIndexSet basis = MultiIndexSet::total_degree(3, 2);
    auto fn = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(1).eval(); };
    CHECK_THROWS_AS(project_collocation(sg, basis, fn, 1, 1), std::invalid_argument);
    const MultiIndexSet other = MultiIndexSet::total_degree(2, 1);
    CHECK_THROWS_AS(project_collocation(sg, other, fn, 1, 1), std::invalid_argument);
}

TEST_CASE("coefficients are identical for any worker count") {
    const StructuredGrid grid = build_grid(kBench, 13, 5);
    const RandomFieldModel model = small_model(grid, 3);
    const BcCase bc = BcCase::mixed(100.0, 10.0);

    const CollocationRun one = run_full(model, grid, bc, 2, 2, {}, 1);
    const CollocationRun four = run_full(model, grid, bc, 2, 2, {}, 4);
    CHECK(one.solution.coeffs == four.solution.coeffs); // bitwise
    CHECK(one.field_min == four.field_min);
    CHECK(one.field_max == four.field_max);
}

TEST_CASE("full run mean sits inside the boundary bounds") {
    const StructuredGrid grid = build_grid(kBench, 13, 5);
    const RandomFieldModel model = small_model(grid, 3);
    const CollocationRun run = run_full(model, grid, BcCase::mixed(100.0, 10.0), 2, 2, {}, 0);

    CHECK(run.solves == node_count(3, 2));
    CHECK(run.field_min >= 10.0 - 1e-9);
    CHECK(run.field_max <= 100.0 + 1e-9);

    const MomentFields m = moments(run.solution);
    CHECK(m.mean.minCoeff() >= 10.0 - 1e-9);
    CHECK(m.mean.maxCoeff() <= 100.0 + 1e-9);
    CHECK(m.stddev.minCoeff() >= 0.0);
    // interior variability is genuinely nonzero
    CHECK(m.stddev.maxCoeff() > 1e-2);
}

TEST_CASE("gaussian part keeps the low-order coefficients") {
    const StructuredGrid grid = build_grid(kBench, 13, 5);
    const RandomFieldModel model = small_model(grid, 3);
    const CollocationRun run = run_full(model, grid, BcCase::mixed(100.0, 10.0), 3, 3, {}, 0);

    const PCSolution gauss = gaussian_part(run.solution);
    CHECK(gauss.basis.order == 1);
    CHECK(gauss.basis.size() == 4);
    CHECK(gauss.coeffs == run.solution.coeffs.leftCols(4));
    CHECK(gauss.germ == Germ::Input);
}

TEST_CASE("coarse gaussian run matches the full gaussian part") {
    const StructuredGrid grid = build_grid(kBench, 13, 5);
    const RandomFieldModel model = small_model(grid, 3);
    const BcCase bc = BcCase::mixed(100.0, 10.0);

    // same level: the degree <= 1 projection coincides exactly
    const CollocationRun full = run_full(model, grid, bc, 1, 2, {}, 0);
    const CollocationRun sketch = run_coarse_gaussian(model, grid, bc, 2, {}, 0);
    CHECK((full.solution.coeffs - sketch.solution.coeffs).cwiseAbs().maxCoeff() < 1e-13);

    // a lower level stays close on this smooth problem
    const CollocationRun low = run_coarse_gaussian(model, grid, bc, 1, {}, 0);
    CHECK(low.solves < sketch.solves);
    CHECK((low.solution.coeffs - sketch.solution.coeffs).cwiseAbs().maxCoeff() < 0.5);
}

TEST_CASE("spatially coarsened sketch lifts exactly on matching data") {
    const StructuredGrid grid = build_grid(kBench, 25, 9);
    const RandomFieldModel model = small_model(grid, 2);
    const BcCase bc = BcCase::mixed(100.0, 10.0);

    const CollocationRun fine = run_coarse_gaussian(model, grid, bc, 1, {}, 1, 1);
    const CollocationRun lifted = run_coarse_gaussian(model, grid, bc, 1, {}, 1, 2);
    CHECK(lifted.solves == fine.solves);
    CHECK(lifted.solution.coeffs.rows() == grid.num_nodes());
    // the coarse solve approximates the fine one to discretization accuracy
    const MomentFields mf = moments(fine.solution);
    const MomentFields ml = moments(lifted.solution);
    CHECK((mf.mean - ml.mean).cwiseAbs().maxCoeff() < 1.0);

    CHECK_THROWS_AS(run_coarse_gaussian(model, grid, bc, 1, {}, 1, 7), std::invalid_argument);
}

TEST_CASE("solver failures carry the collocation point index") {
    const SparseGrid sg = smolyak(2, 1);
    const MultiIndexSet basis = MultiIndexSet::total_degree(2, 1);
    auto fn = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd {
        if (z.cwiseAbs().maxCoeff() > 0.5)
            throw std::runtime_error("boom");
        return Eigen::VectorXd::Zero(1);
    };
    try {
        project_collocation(sg, basis, fn, 1, 1);
        FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("collocation point") != std::string::npos);
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
}
