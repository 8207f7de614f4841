#include "uqdd/collocation.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace uqdd {

namespace {

int effective_workers(int workers) {
    if (workers > 0)
        return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

CollocationRun project_collocation(const SparseGrid& grid, const MultiIndexSet& basis,
                                   const SpatialSampler& fn, int n_spatial, int workers) {
    if (grid.dim != basis.dim)
        throw std::invalid_argument("project_collocation: germ dimension mismatch");
    if (grid.level < basis.order)
        throw std::invalid_argument(
            "project_collocation: grid level cannot resolve the basis order");

    const int q_total = grid.size();
    const int w = std::min(effective_workers(workers), q_total);

    CollocationRun run;
    run.solution.basis = basis;
    run.solution.coeffs = Eigen::MatrixXd::Zero(n_spatial, basis.size());
    run.solves = q_total;
    run.field_min = std::numeric_limits<double>::infinity();
    run.field_max = -std::numeric_limits<double>::infinity();

    const int batch = std::max(w, std::min(64, q_total));
    std::vector<Eigen::VectorXd> results(batch);
    std::exception_ptr error;
    std::mutex error_mutex;

    for (int q0 = 0; q0 < q_total; q0 += batch) {
        const int q1 = std::min(q0 + batch, q_total);

        auto work = [&](int t) {
            for (int q = q0 + t; q < q1; q += w) {
                try {
                    results[q - q0] = fn(grid.nodes.row(q).transpose());
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::make_exception_ptr(std::runtime_error(
                            "collocation point " + std::to_string(q) + ": " + e.what()));
                    return;
                }
            }
        };
        if (w == 1)
            work(0);
        else {
            std::vector<std::thread> pool;
            for (int t = 0; t < w; ++t)
                pool.emplace_back(work, t);
            for (auto& th : pool)
                th.join();
        }
        if (error)
            std::rethrow_exception(error);

        // ordered accumulation keeps coefficients independent of worker count
        for (int q = q0; q < q1; ++q) {
            const Eigen::VectorXd& u = results[q - q0];
            if (u.size() != n_spatial)
                throw std::runtime_error("project_collocation: sampler returned wrong size");
            run.field_min = std::min(run.field_min, u.minCoeff());
            run.field_max = std::max(run.field_max, u.maxCoeff());
            const Eigen::VectorXd psi =
                grid.weights[q] * psi_row(basis, grid.nodes.row(q).transpose());
            run.solution.coeffs.noalias() += u * psi.transpose();
        }
    }
    return run;
}

CollocationRun run_full(const RandomFieldModel& model, const StructuredGrid& grid,
                        const BcCase& bc, int order, int level, const Eigen::VectorXd& source,
                        int workers) {
    const SparseGrid sg = smolyak(model.dim(), level);
    const MultiIndexSet basis = MultiIndexSet::total_degree(model.dim(), order);
    auto fn = [&](const Eigen::VectorXd& xi) {
        return solve_diffusion(grid, realize_coeff(model, xi), bc, source);
    };
    return project_collocation(sg, basis, fn, grid.num_nodes(), workers);
}

PCSolution gaussian_part(const PCSolution& pc) {
    PCSolution out;
    out.basis = MultiIndexSet::total_degree(pc.basis.dim, std::min(1, pc.basis.order));
    out.coeffs = pc.coeffs.leftCols(out.basis.size());
    out.germ = pc.germ;
    out.subdomain = pc.subdomain;
    return out;
}

namespace {

// bilinear lift from the coarsened mesh back to the fine mesh
Eigen::SparseMatrix<double> build_lift(const StructuredGrid& fine, const StructuredGrid& coarse) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < fine.num_nodes(); ++k) {
        const double x = fine.x1(k);
        const double y = fine.x2(k);
        int ic = std::min(static_cast<int>((x - coarse.box.x1_min) / coarse.h1), coarse.n1 - 2);
        int jc = std::min(static_cast<int>((y - coarse.box.x2_min) / coarse.h2), coarse.n2 - 2);
        ic = std::max(ic, 0);
        jc = std::max(jc, 0);
        const double tx = (x - coarse.coord1(ic)) / coarse.h1;
        const double ty = (y - coarse.coord2(jc)) / coarse.h2;
        const double w00 = (1 - tx) * (1 - ty);
        const double w10 = tx * (1 - ty);
        const double w01 = (1 - tx) * ty;
        const double w11 = tx * ty;
        if (w00 > 0)
            trip.emplace_back(k, coarse.index(ic, jc), w00);
        if (w10 > 0)
            trip.emplace_back(k, coarse.index(ic + 1, jc), w10);
        if (w01 > 0)
            trip.emplace_back(k, coarse.index(ic, jc + 1), w01);
        if (w11 > 0)
            trip.emplace_back(k, coarse.index(ic + 1, jc + 1), w11);
    }
    Eigen::SparseMatrix<double> lift(fine.num_nodes(), coarse.num_nodes());
    lift.setFromTriplets(trip.begin(), trip.end());
    return lift;
}

} // namespace

CollocationRun run_coarse_gaussian(const RandomFieldModel& model, const StructuredGrid& grid,
                                   const BcCase& bc, int level, const Eigen::VectorXd& source,
                                   int workers, int spatial_factor) {
    const SparseGrid sg = smolyak(model.dim(), level);
    const MultiIndexSet basis = MultiIndexSet::total_degree(model.dim(), 1);

    if (spatial_factor < 1)
        throw std::invalid_argument("run_coarse_gaussian: need spatial_factor >= 1");
    if (spatial_factor == 1) {
        auto fn = [&](const Eigen::VectorXd& xi) {
            return solve_diffusion(grid, realize_coeff(model, xi), bc, source);
        };
        return project_collocation(sg, basis, fn, grid.num_nodes(), workers);
    }

    if ((grid.n1 - 1) % spatial_factor != 0 || (grid.n2 - 1) % spatial_factor != 0)
        throw std::invalid_argument("run_coarse_gaussian: spatial_factor must divide cell counts");
    const StructuredGrid coarse = build_grid(grid.box, (grid.n1 - 1) / spatial_factor + 1,
                                             (grid.n2 - 1) / spatial_factor + 1);
    // coarse nodes coincide with every spatial_factor-th fine node, so the
    // fine-grid expansion restricts by indexing and the germ stays shared
    std::vector<int> fine_of(coarse.num_nodes());
    for (int k = 0; k < coarse.num_nodes(); ++k)
        fine_of[k] = grid.index(coarse.i_of(k) * spatial_factor, coarse.j_of(k) * spatial_factor);

    Eigen::VectorXd coarse_source;
    if (source.size() != 0) {
        coarse_source.resize(coarse.num_nodes());
        for (int k = 0; k < coarse.num_nodes(); ++k)
            coarse_source[k] = source[fine_of[k]];
    }
    const Eigen::SparseMatrix<double> lift = build_lift(grid, coarse);

    auto fn = [&](const Eigen::VectorXd& xi) -> Eigen::VectorXd {
        const Eigen::VectorXd g = realize_log(model, xi);
        Eigen::VectorXd coeff(coarse.num_nodes());
        for (int k = 0; k < coarse.num_nodes(); ++k)
            coeff[k] = std::exp(g[fine_of[k]]);
        return lift * solve_diffusion(coarse, coeff, bc, coarse_source);
    };
    return project_collocation(sg, basis, fn, grid.num_nodes(), workers);
}

} // namespace uqdd
