// Python bindings for the main operations: grids, the lognormal random
// field, the deterministic solver, sparse-grid collocation, and the
// domain-decomposed adapted study.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uqdd/basis_adapt.hpp"
#include "uqdd/collocation.hpp"
#include "uqdd/validation.hpp"

namespace py = pybind11;
using namespace uqdd;

namespace {

StructuredGrid make_grid(double x1_min, double x1_max, double x2_min, double x2_max, int n1,
                         int n2) {
    return build_grid(Rect{x1_min, x1_max, x2_min, x2_max}, n1, n2);
}

BcCase make_bc(const std::string& kind, double left, double right, double top, double bottom) {
    if (kind == "mixed")
        return BcCase::mixed(left, right);
    if (kind == "all-dirichlet")
        return BcCase::all_dirichlet(left, right, top, bottom);
    throw std::invalid_argument("bc kind must be 'mixed' or 'all-dirichlet'");
}

RandomFieldModel make_field(const StructuredGrid& grid, double a0, double sigma_a, double l1,
                            double l2, int dim, const std::string& convention) {
    VarianceConvention conv;
    if (convention == "sigma-ratio")
        conv = VarianceConvention::SigmaRatio;
    else if (convention == "variance-ratio")
        conv = VarianceConvention::VarianceRatio;
    else
        throw std::invalid_argument("convention must be 'sigma-ratio' or 'variance-ratio'");
    const LognormalSpec spec = lognormal_params(a0, sigma_a, conv);
    return kl_solve(CovarianceKernel{spec.sigma_g, l1, l2}, spec, grid, quad_weights(grid), dim);
}

struct PyRun {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
    long solves = 0;
    double field_min = 0.0;
    double field_max = 0.0;
};

PyRun py_run_full(const RandomFieldModel& model, const StructuredGrid& grid, const BcCase& bc,
                  int order, int level, int workers) {
    const CollocationRun run =
        run_full(model, grid, bc, order, internal_level(level), {}, workers);
    const MomentFields mf = moments(run.solution);
    return {mf.mean, mf.stddev, run.solves, run.field_min, run.field_max};
}

struct PyAdaptedStudy {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
    long solves = 0;
    double max_interface_mean_gap = 0.0;
    double max_interface_std_gap = 0.0;
    std::vector<Eigen::MatrixXd> isometries;
    std::vector<Eigen::VectorXd> subdomain_spectra;
    std::vector<int> labels;
};

PyAdaptedStudy py_run_adapted(const RandomFieldModel& model, const StructuredGrid& grid,
                              const BcCase& bc, int nx, int ny, int order, int level_coarse,
                              int level_adapted, int reduced_dim, int workers) {
    const SubdomainPartition part = partition_snake(grid, nx, ny);
    const Eigen::VectorXd w = quad_weights(grid);
    const CollocationRun sketch =
        run_coarse_gaussian(model, grid, bc, internal_level(level_coarse), {}, workers);

    PyAdaptedStudy study;
    study.solves = sketch.solves;
    std::vector<PCSolution> parts;
    for (int s = 1; s <= part.count(); ++s) {
        const AdaptationMap map = adapt_subdomain(sketch.solution, part, w, s, reduced_dim);
        const CollocationRun run =
            run_adapted(model, grid, bc, map, order, internal_level(level_adapted), {}, workers);
        parts.push_back(run.solution);
        study.solves += run.solves;
        study.isometries.push_back(map.A);
        study.subdomain_spectra.push_back(map.mu);
    }
    const StitchedSolution st = stitch(parts, part, grid);
    study.mean = st.mean;
    study.stddev = st.stddev;
    study.max_interface_mean_gap = st.max_mean_gap;
    study.max_interface_std_gap = st.max_std_gap;
    study.labels = part.labels;
    return study;
}

PyRun py_run_mc(const RandomFieldModel& model, const StructuredGrid& grid, const BcCase& bc,
                long samples, std::uint64_t seed, int workers) {
    const McReference ref = mc_reference(model, grid, bc, samples, seed, {}, workers);
    return {ref.mean, ref.stddev, ref.samples, ref.field_min, ref.field_max};
}

} // namespace

PYBIND11_MODULE(_uqdd, m) {
    m.doc() = "steady diffusion with a lognormal random coefficient: "
              "domain-decomposed stochastic basis adaptation";

    py::class_<StructuredGrid>(m, "Grid")
        .def(py::init(&make_grid), py::arg("x1_min"), py::arg("x1_max"), py::arg("x2_min"),
             py::arg("x2_max"), py::arg("n1"), py::arg("n2"))
        .def_readonly("n1", &StructuredGrid::n1)
        .def_readonly("n2", &StructuredGrid::n2)
        .def_property_readonly("num_nodes", &StructuredGrid::num_nodes)
        .def("x1", &StructuredGrid::x1, py::arg("k"))
        .def("x2", &StructuredGrid::x2, py::arg("k"))
        .def("nearest_node", &StructuredGrid::nearest_node, py::arg("x1"), py::arg("x2"))
        .def("weights", [](const StructuredGrid& g) { return quad_weights(g); });

    py::class_<BcCase>(m, "Bc")
        .def(py::init(&make_bc), py::arg("kind"), py::arg("left"), py::arg("right"),
             py::arg("top") = 0.0, py::arg("bottom") = 0.0)
        .def_readonly("left", &BcCase::left)
        .def_readonly("right", &BcCase::right)
        .def("dirichlet_min", &BcCase::dirichlet_min)
        .def("dirichlet_max", &BcCase::dirichlet_max);

    py::class_<RandomFieldModel>(m, "RandomField")
        .def(py::init(&make_field), py::arg("grid"), py::arg("a0"), py::arg("sigma_a"),
             py::arg("l1"), py::arg("l2"), py::arg("dim"),
             py::arg("convention") = "sigma-ratio")
        .def_property_readonly("dim", &RandomFieldModel::dim)
        .def_readonly("eigenvalues", &RandomFieldModel::lambda)
        .def_readonly("modes", &RandomFieldModel::modes)
        .def_readonly("captured_variance_fraction",
                      &RandomFieldModel::captured_variance_fraction)
        .def("realize_log",
             [](const RandomFieldModel& f, const Eigen::VectorXd& xi) {
                 return realize_log(f, xi);
             },
             py::arg("xi"))
        .def("realize",
             [](const RandomFieldModel& f, const Eigen::VectorXd& xi) {
                 return realize_coeff(f, xi);
             },
             py::arg("xi"));

    py::class_<PyRun>(m, "RunResult")
        .def_readonly("mean", &PyRun::mean)
        .def_readonly("std", &PyRun::stddev)
        .def_readonly("solves", &PyRun::solves)
        .def_readonly("field_min", &PyRun::field_min)
        .def_readonly("field_max", &PyRun::field_max);

    py::class_<PyAdaptedStudy>(m, "AdaptedStudy")
        .def_readonly("mean", &PyAdaptedStudy::mean)
        .def_readonly("std", &PyAdaptedStudy::stddev)
        .def_readonly("solves", &PyAdaptedStudy::solves)
        .def_readonly("max_interface_mean_gap", &PyAdaptedStudy::max_interface_mean_gap)
        .def_readonly("max_interface_std_gap", &PyAdaptedStudy::max_interface_std_gap)
        .def_readonly("isometries", &PyAdaptedStudy::isometries)
        .def_readonly("subdomain_spectra", &PyAdaptedStudy::subdomain_spectra)
        .def_readonly("labels", &PyAdaptedStudy::labels);

    m.def("solve_diffusion",
          [](const StructuredGrid& grid, const Eigen::VectorXd& coeff, const BcCase& bc) {
              return solve_diffusion(grid, coeff, bc, {});
          },
          py::arg("grid"), py::arg("coeff"), py::arg("bc"),
          "One deterministic solve for a nodal coefficient field.");

    m.def("sparse_grid",
          [](int dim, int level) {
              const SparseGrid sg = smolyak(dim, internal_level(level));
              return py::make_tuple(sg.nodes, sg.weights);
          },
          py::arg("dim"), py::arg("level"),
          "Sparse Gauss-Hermite nodes and weights (levels are 1-based).");

    m.def("node_count",
          [](int dim, int level) { return node_count(dim, internal_level(level)); },
          py::arg("dim"), py::arg("level"));

    m.def("basis_size", &basis_size, py::arg("dim"), py::arg("order"));

    m.def("lognormal_params",
          [](double a0, double sigma_a, const std::string& convention) {
              const LognormalSpec spec = lognormal_params(
                  a0, sigma_a,
                  convention == "variance-ratio" ? VarianceConvention::VarianceRatio
                                                 : VarianceConvention::SigmaRatio);
              return py::make_tuple(spec.sigma_g, spec.g0);
          },
          py::arg("a0"), py::arg("sigma_a"), py::arg("convention") = "sigma-ratio",
          "(sigma_g, g0) of the log field.");

    m.def("run_full", &py_run_full, py::arg("field"), py::arg("grid"), py::arg("bc"),
          py::arg("order"), py::arg("level"), py::arg("workers") = 0,
          "Full-dimensional collocation; returns the moment fields.");

    m.def("run_adapted", &py_run_adapted, py::arg("field"), py::arg("grid"), py::arg("bc"),
          py::arg("nx"), py::arg("ny"), py::arg("order"), py::arg("level_coarse"),
          py::arg("level_adapted"), py::arg("reduced_dim"), py::arg("workers") = 0,
          "Domain-decomposed adapted collocation; returns the stitched study.");

    m.def("run_mc", &py_run_mc, py::arg("field"), py::arg("grid"), py::arg("bc"),
          py::arg("samples"), py::arg("seed") = 42, py::arg("workers") = 0,
          "Monte Carlo reference moments.");
}
